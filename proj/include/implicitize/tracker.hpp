#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "implicitize/polynomial.hpp"

namespace implicitize {

enum class PathStatus { kSuccess, kDiverged, kSingularEndpoint, kStepUnderflow };

struct TrackedPoint {
  Eigen::VectorXcd coordinates;
  PathStatus status = PathStatus::kStepUnderflow;
  double residual = std::numeric_limits<double>::infinity();

  bool ok() const { return status == PathStatus::kSuccess; }
};

struct TrackSettings {
  double initial_step = 0.05;
  double min_step = 1e-7;
  double max_step = 0.1;
  double corrector_tolerance = 1e-8;
  int max_corrector_iterations = 3;
  int successes_before_increase = 5;
  double step_increase_factor = 2.0;
  double step_decrease_factor = 0.5;
  double endpoint_refinement_tolerance = 1e-11;
  double divergence_threshold = 1e8;
  long max_steps = 100000;
};

/// A square polynomial system compiled for repeated evaluation: terms are
/// flattened and the full Jacobian is pre-differentiated, so values and
/// derivatives at a point cost one shared power table plus term sums.
///
/// Evaluation is const and takes an external Workspace, so one evaluator can
/// serve concurrent paths as long as each path owns its workspace.
class SystemEvaluator {
 public:
  explicit SystemEvaluator(std::vector<Polynomial> system);

  int size() const { return static_cast<int>(compiled_.size()); }
  int num_vars() const { return num_vars_; }
  const std::vector<Polynomial>& system() const { return system_; }

  struct Workspace {
    std::vector<Complex> powers;
  };

  void values(const Eigen::VectorXcd& x, Workspace& ws, Eigen::VectorXcd& out) const;
  void jacobian(const Eigen::VectorXcd& x, Workspace& ws, Eigen::MatrixXcd& out) const;
  void values_and_jacobian(const Eigen::VectorXcd& x, Workspace& ws, Eigen::VectorXcd& values_out,
                           Eigen::MatrixXcd& jacobian_out) const;

  double max_residual(const Eigen::VectorXcd& x) const;

 private:
  struct CompiledTerm {
    Complex coefficient;
    std::vector<std::pair<int, int>> factors;  // (variable, exponent > 0)
  };
  using CompiledPoly = std::vector<CompiledTerm>;

  CompiledPoly compile(const Polynomial& p) const;
  void fill_powers(const Eigen::VectorXcd& x, Workspace& ws) const;
  Complex eval_compiled(const CompiledPoly& poly, const Workspace& ws) const;

  std::vector<Polynomial> system_;
  std::vector<CompiledPoly> compiled_;
  std::vector<CompiledPoly> jacobian_;  // row-major, size * num_vars
  int num_vars_ = 0;
  int stride_ = 1;
};

/// Straight-line homotopy H(x, t) = (1 - t) * gamma * start(x) + t * target(x)
/// between two square systems of equal shape, tracked for t from 0 to 1.
class Homotopy {
 public:
  Homotopy(std::vector<Polynomial> start_system, std::vector<Polynomial> target_system,
           Complex gamma);

  const SystemEvaluator& start() const { return start_; }
  const SystemEvaluator& target() const { return target_; }
  Complex gamma() const { return gamma_; }
  int size() const { return start_.size(); }

 private:
  SystemEvaluator start_;
  SystemEvaluator target_;
  Complex gamma_;
};

/// Tracks one solution path by first-order prediction and Newton correction
/// with adaptive steps, then polishes the endpoint against the target system.
TrackedPoint track_path(const Homotopy& h, const Eigen::VectorXcd& start_point,
                        const TrackSettings& settings = {});

/// Tracks several start points; results come back in input order regardless
/// of the thread count.
std::vector<TrackedPoint> track_many(const Homotopy& h,
                                     const std::vector<Eigen::VectorXcd>& start_points,
                                     const TrackSettings& settings = {}, int threads = 1);

/// Newton iteration on a square system from a nearby point. Quadratic
/// convergence is monitored through update-norm ratios; a stall or a singular
/// Jacobian reports kSingularEndpoint.
TrackedPoint newton_refine(const SystemEvaluator& system, Eigen::VectorXcd point, double tolerance,
                           int max_iterations = 25);
TrackedPoint newton_refine(const std::vector<Polynomial>& system, const Eigen::VectorXcd& point,
                           double tolerance, int max_iterations = 25);

/// Solves a square system by continuation from the total-degree start system
/// {x_i^{d_i} - 1} with a fresh random unit gamma. Returns the successful
/// endpoints deduplicated at kSolutionMatchTolerance; per-path statuses are
/// available through the optional out parameter. Throws NumericalError if
/// every path fails.
std::vector<TrackedPoint> solve_total_degree(const std::vector<Polynomial>& system,
                                             const TrackSettings& settings, std::uint64_t seed,
                                             int threads = 1,
                                             std::vector<PathStatus>* path_statuses = nullptr);

/// Max-norm tolerance at which two refined solutions count as one point.
inline constexpr double kSolutionMatchTolerance = 1e-6;

}  // namespace implicitize
