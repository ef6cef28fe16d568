#pragma once

#include <cstdint>
#include <vector>

#include "implicitize/polynomial.hpp"
#include "implicitize/rng.hpp"
#include "implicitize/tracker.hpp"

namespace implicitize {

/// Residual bound every sample must satisfy on the ideal generators.
inline constexpr double kSampleResidualTolerance = 1e-8;

/// A sliced witness of the source variety: random affine-linear cuts of V(I)
/// plus the finite solution set of {I, slice}. When the ideal is empty the
/// witness is trivial and sampling draws random tuples directly.
struct SourceWitness {
  ProblemSpec spec;
  int source_dim = 0;
  std::vector<AffineForm> slice;
  std::vector<Eigen::VectorXcd> points;

  bool trivial() const { return spec.ideal_generators.empty(); }
};

/// A source point paired with its lift to the cone parametrization and the
/// resulting cone point.
struct ConeSample {
  Eigen::VectorXcd source;       // in the problem's variables
  Eigen::VectorXcd cone_source;  // lambda-prefixed when augmented
  Eigen::VectorXcd image;        // point on the affine cone
};

/// Slices V(I) with random affine hyperplanes, solves the square system by
/// total-degree continuation, and keeps the regular solutions. Solutions
/// where the ideal's Jacobian does not have numerical rank r are dropped;
/// it is an error if none survive. Trivial when the ideal is empty.
SourceWitness build_source_witness(const ProblemSpec& spec, std::uint64_t seed,
                                   const TrackSettings& settings = {}, int threads = 1);

/// General points on the source variety: one freshly randomized slice per
/// requested point, tracked from the cached witness points in rotation.
std::vector<Eigen::VectorXcd> numerical_source_sample(const SourceWitness& witness, int count,
                                                      std::uint64_t seed,
                                                      const TrackSettings& settings = {},
                                                      int threads = 1);

/// General points on the affine cone of the image, with the lambda lift drawn
/// from the unit circle scaled into [1/2, 3/2] when the cone is augmented.
std::vector<ConeSample> sample_cone_points(const SourceWitness& witness, const ConeMap& cone,
                                           int count, std::uint64_t seed,
                                           const TrackSettings& settings = {}, int threads = 1);

std::vector<Eigen::VectorXcd> numerical_image_sample(const SourceWitness& witness,
                                                     const ConeMap& cone, int count,
                                                     std::uint64_t seed,
                                                     const TrackSettings& settings = {},
                                                     int threads = 1);

/// Random affine-linear forms with coefficients and constants drawn from the
/// unit circle scaled into [1/2, 3/2].
std::vector<AffineForm> random_affine_forms(int num_vars, int count, Rng& rng);

}  // namespace implicitize
