#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "implicitize/dimension.hpp"
#include "implicitize/sampler.hpp"

namespace implicitize {

/// Max-norm tolerance at which two image points count as one; shared by the
/// degree and membership computations.
inline constexpr double kImageMatchTolerance = 1e-6;

/// Residual bound a witness pair's image must satisfy on the slice forms.
inline constexpr double kSliceResidualTolerance = 1e-6;

/// Modulus of the random translation step used by the trace test.
inline constexpr double kTraceStepModulus = 0.1;

/// Relative bound on the second difference of the trace under parallel slice
/// translation below which the point set counts as complete. Complete sets
/// land at the tracking noise (~1e-9 relative even for thousands of points);
/// incomplete sets carry the curvature of a dropped branch, observed at 1e-5
/// relative and above.
inline constexpr double kTraceTolerance = 1e-6;

/// Affine-linear cut of the cone: as many forms as the cone has dimensions,
/// with unit-normalized coefficient rows.
struct Slice {
  std::vector<AffineForm> forms;

  int size() const { return static_cast<int>(forms.size()); }
  Eigen::MatrixXcd coefficient_matrix() const;
  Eigen::VectorXcd constant_vector() const;
};

struct WitnessPair {
  Eigen::VectorXcd source;  // in the cone parametrization's source variables
  Eigen::VectorXcd image;   // point of slice ∩ cone
};

/// Witness data for the image of a map: a slice of the cone, one source
/// preimage per slice point, and the bookkeeping of how the point set grew.
/// The degree of the image equals the pair count once the trace test passes.
struct PseudoWitnessSet {
  ProblemSpec spec;
  ConeMap cone;
  int cone_dim = 0;
  Slice slice;
  std::vector<AffineForm> extra_source_forms;  // squares the pulled-back system
  std::vector<WitnessPair> pairs;
  bool is_complete = false;
  std::vector<int> loop_log;  // pair count after each monodromy round
  std::uint64_t seed = 0;

  int degree() const { return static_cast<int>(pairs.size()); }
};

struct DegreeOptions {
  int max_repetitive_monodromies = 4;
  int max_trace_tests = 10;
  double gap_threshold = kDefaultGapThreshold;
  TrackSettings tracking;
  int threads = 1;
  std::function<void(int)> progress;  // called with the pair count after each loop
};

/// Compares cone points under the dedup convention: raw coordinates for
/// augmented cones, first-nonzero coordinate scaled to 1 for homogeneous
/// input.
bool images_match(const PseudoWitnessSet& pws, const Eigen::VectorXcd& a,
                  const Eigen::VectorXcd& b, double tolerance = kImageMatchTolerance);

/// Samples a general source point, maps it to the cone, and lays a random
/// slice (and, if the pulled-back system is underdetermined, extra source
/// forms) through it.
PseudoWitnessSet initial_witness_pair(const ProblemSpec& spec, const SourceWitness& witness,
                                      const ConeMap& cone, std::uint64_t seed,
                                      const DegreeOptions& options = {});

/// One monodromy round: a loop through a fresh random slice with fresh unit
/// factors, tracked over every known pair. Endpoints with a genuinely new
/// image are appended; known pairs are never removed. Appends the resulting
/// pair count to the loop log.
void monodromy_loop(PseudoWitnessSet& pws, std::uint64_t seed, const DegreeOptions& options = {});

/// Completeness certificate: translates the first slice form by epsilon and
/// 2*epsilon in parallel and tests whether the coordinatewise sum of the
/// image points moves affine-linearly (vanishing second difference). Any
/// tracking failure reports the test as failed.
bool trace_test(const PseudoWitnessSet& pws, std::uint64_t seed,
                const DegreeOptions& options = {});

/// Tracks every pair to a fresh slice by a straight-line parameter homotopy
/// on the slice data; used after a failed trace test. Pairs whose track is
/// lost are dropped.
void move_to_slice(PseudoWitnessSet& pws, const Slice& fresh, std::uint64_t seed,
                   const DegreeOptions& options = {});

/// Full degree computation: grow the witness set by monodromy until the
/// configured number of consecutive rounds learns nothing, then certify with
/// the trace test; on failure move to a fresh slice and resume. After
/// max_trace_tests failed certificates the result is returned with
/// is_complete = false and the pair count is only a lower bound.
PseudoWitnessSet numerical_image_degree(const ProblemSpec& spec, const SourceWitness& witness,
                                        const ConeMap& cone, std::uint64_t seed,
                                        const DegreeOptions& options = {});

}  // namespace implicitize
