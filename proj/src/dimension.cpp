#include "implicitize/dimension.hpp"

#include "implicitize/rng.hpp"

namespace implicitize {

namespace {

Eigen::MatrixXcd evaluate_jacobian(const std::vector<Polynomial>& polys,
                                   const Eigen::VectorXcd& x) {
  const Eigen::Index rows = static_cast<Eigen::Index>(polys.size());
  const Eigen::Index cols = x.size();
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = polys[i].derivative(static_cast<int>(j)).evaluate(x);
  }
  return m;
}

/// k1 - k2 for generators and map components sharing the arity of x.
int dim_at_point(const std::vector<Polynomial>& generators,
                 const std::vector<Polynomial>& components, const Eigen::VectorXcd& x,
                 double gap_threshold) {
  const int n = static_cast<int>(x.size());
  const int r = static_cast<int>(generators.size());
  const int m = static_cast<int>(components.size());

  int tangent;
  if (r == 0) {
    tangent = n;  // empty Jacobian has rank 0
  } else {
    const Eigen::MatrixXcd jac_i = precondition_rows(evaluate_jacobian(generators, x));
    tangent = numerical_kernel_dim(jac_i, gap_threshold);
  }

  Eigen::MatrixXcd stacked(r + m, n);
  if (r > 0) stacked.topRows(r) = evaluate_jacobian(generators, x);
  stacked.bottomRows(m) = evaluate_jacobian(components, x);
  const int fiber = numerical_kernel_dim(precondition_rows(stacked), gap_threshold);
  return tangent - fiber;
}

int stable_dim(const std::vector<Polynomial>& generators,
               const std::vector<Polynomial>& components,
               const std::vector<Eigen::VectorXcd>& points, double gap_threshold,
               const char* what) {
  // Two general points must agree; a fresh pair gets one retry.
  for (std::size_t pair = 0; pair + 1 < points.size(); pair += 2) {
    const int a = dim_at_point(generators, components, points[pair], gap_threshold);
    const int b = dim_at_point(generators, components, points[pair + 1], gap_threshold);
    if (a == b) return a;
  }
  throw NumericalError(std::string(what) +
                       ": independent sample points disagree; the samples look non-generic");
}

}  // namespace

int tangent_space_dim(const std::vector<Polynomial>& generators, const Eigen::VectorXcd& x,
                      double gap_threshold) {
  if (generators.empty()) return static_cast<int>(x.size());
  const Eigen::MatrixXcd jac = precondition_rows(evaluate_jacobian(generators, x));
  return numerical_kernel_dim(jac, gap_threshold);
}

int numerical_image_dim(const ProblemSpec& spec, const SourceWitness& witness, std::uint64_t seed,
                        double gap_threshold, const TrackSettings& settings) {
  const std::vector<Eigen::VectorXcd> points =
      numerical_source_sample(witness, 4, Rng::child_seed(seed, 0xd1), settings);
  return stable_dim(spec.ideal_generators, spec.map.components, points, gap_threshold,
                    "image dimension");
}

int numerical_cone_dim(const ProblemSpec& spec, const ConeMap& cone, const SourceWitness& witness,
                       std::uint64_t seed, double gap_threshold, const TrackSettings& settings) {
  const std::vector<ConeSample> samples =
      sample_cone_points(witness, cone, 4, Rng::child_seed(seed, 0xc0), settings);
  std::vector<Polynomial> generators = spec.ideal_generators;
  if (cone.lambda_augmented) {
    for (auto& g : generators) g = g.prepend_variable();
  }
  std::vector<Eigen::VectorXcd> points;
  points.reserve(samples.size());
  for (const auto& s : samples) points.push_back(s.cone_source);
  return stable_dim(generators, cone.map.components, points, gap_threshold, "cone dimension");
}

}  // namespace implicitize
