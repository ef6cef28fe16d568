#include "implicitize/interpolation.hpp"

#include <algorithm>

#include "implicitize/rng.hpp"

namespace implicitize {

ComplexMatrix build_interpolation_matrix(const std::vector<Eigen::VectorXcd>& points, int degree) {
  if (points.empty()) throw InputError("interpolation needs at least one point");
  const int ambient = static_cast<int>(points.front().size());
  for (const auto& p : points) {
    if (p.size() != ambient) throw InputError("interpolation points disagree on dimension");
  }
  const std::vector<std::vector<int>> basis = monomial_basis(degree, ambient);
  const Eigen::Index cols = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix matrix(static_cast<Eigen::Index>(points.size()), cols);

  std::vector<Complex> powers(static_cast<std::size_t>(ambient) * (degree + 1));
  for (std::size_t row = 0; row < points.size(); ++row) {
    // Scaling a point scales the whole row, which the row normalization
    // divides right back out; working with max-modulus 1 keeps the monomial
    // powers away from overflow at large degree.
    Eigen::VectorXcd p = points[row];
    const double scale = p.lpNorm<Eigen::Infinity>();
    if (scale > 0.0) p /= scale;
    for (int v = 0; v < ambient; ++v) {
      Complex* table = powers.data() + static_cast<std::size_t>(v) * (degree + 1);
      table[0] = Complex(1.0, 0.0);
      for (int e = 1; e <= degree; ++e) table[e] = table[e - 1] * p[v];
    }
    for (Eigen::Index col = 0; col < cols; ++col) {
      Complex value(1.0, 0.0);
      const std::vector<int>& exps = basis[col];
      for (int v = 0; v < ambient; ++v) {
        if (exps[v] > 0) value *= powers[static_cast<std::size_t>(v) * (degree + 1) + exps[v]];
      }
      matrix(static_cast<Eigen::Index>(row), col) = value;
    }
  }
  return precondition_rows(matrix);
}

NumericalInterpolationTable numerical_hilbert_function(const ProblemSpec& spec,
                                                       const SourceWitness& witness,
                                                       const ConeMap& cone, int degree,
                                                       double gap_threshold, std::uint64_t seed,
                                                       const TrackSettings& settings,
                                                       int threads) {
  (void)spec;
  if (degree < 0) throw InputError("the degree argument must be nonnegative");
  const int ambient = cone.ambient_dim();
  const std::size_t num_monomials = monomial_basis(degree, ambient).size();

  NumericalInterpolationTable table;
  table.degree_argument = degree;
  table.num_monomials = static_cast<int>(num_monomials);
  table.gap_threshold = gap_threshold;
  table.sample_points = numerical_image_sample(witness, cone, static_cast<int>(num_monomials),
                                               Rng::child_seed(seed, 0x411b), settings, threads);
  table.interpolation_matrix = build_interpolation_matrix(table.sample_points, degree);

  const SVDResult dec = svd(table.interpolation_matrix, /*with_vectors=*/true);
  table.singular_values = dec.singular_values;
  table.right_singular_vectors = dec.right_singular_vectors;
  table.hilbert_value = numerical_kernel_dim(table.singular_values,
                                             table.interpolation_matrix.cols(), gap_threshold);
  return table;
}

std::vector<Eigen::VectorXcd> extract_image_equations(const NumericalInterpolationTable& table) {
  std::vector<Eigen::VectorXcd> equations;
  const Eigen::Index cols = table.right_singular_vectors.cols();
  const int kernel = table.hilbert_value;
  if (kernel <= 0 || cols == 0) return equations;
  if (kernel > cols) throw InputError("table kernel exceeds the number of singular vectors");
  equations.reserve(kernel);
  for (Eigen::Index c = cols - kernel; c < cols; ++c)
    equations.push_back(table.right_singular_vectors.col(c));
  return equations;
}

}  // namespace implicitize
