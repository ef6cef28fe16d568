#pragma once

#include <cstdint>

#include "implicitize/monodromy.hpp"

namespace implicitize {

struct MembershipReport {
  bool on_image = false;
  bool all_paths_tracked = true;  // false means the answer may be incomplete
  int matched_paths = 0;
  std::vector<PathStatus> statuses;
};

/// Decides whether the query point lies in the image of the map, by moving
/// the witness slice to a random slice through the point and inspecting the
/// tracked endpoints. The witness set must be complete. For inhomogeneous
/// problems the query is an affine point of the target space and is lifted to
/// the cone as (1, y); for homogeneous problems it is a cone point.
bool is_on_image(const PseudoWitnessSet& pws, const Eigen::VectorXcd& point,
                 double tolerance = kImageMatchTolerance, std::uint64_t seed = 0,
                 const TrackSettings& settings = {}, int threads = 1,
                 MembershipReport* report = nullptr);

}  // namespace implicitize
