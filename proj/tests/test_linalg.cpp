#include <doctest.h>

#include "implicitize/linalg.hpp"
#include "implicitize/rng.hpp"
#include "oracles.hpp"

using namespace implicitize;

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.unit_circle();
  }
  return m;
}

}  // namespace

TEST_CASE("svd: pinned spectra") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const SVDResult s1 = svd(id);
  CHECK(s1.singular_values[0] == doctest::Approx(1.0));
  CHECK(s1.singular_values[1] == doctest::Approx(1.0));

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
  diag(0, 0) = Complex(3.0, 0.0);
  const SVDResult s2 = svd(diag);
  CHECK(s2.singular_values[0] == doctest::Approx(3.0));
  CHECK(s2.singular_values[1] == doctest::Approx(0.0));
}

TEST_CASE("svd: rank-1 outer product against the Gram-matrix route") {
  Rng rng(41);
  Eigen::VectorXcd u(3), v(4);
  for (int i = 0; i < 3; ++i) u[i] = rng.unit_circle();
  for (int i = 0; i < 4; ++i) v[i] = rng.unit_circle();
  u *= 2.0 / u.norm();
  v *= 2.0 / v.norm();
  const Eigen::MatrixXcd m = u * v.adjoint();
  const SVDResult s = svd(m);
  CHECK(s.singular_values[0] == doctest::Approx(4.0).epsilon(1e-10));
  for (int i = 1; i < 3; ++i) CHECK(s.singular_values[i] <= 1e-12);

  // The Gram route squares the condition number, so its accuracy floor near
  // zero sits at sqrt(eps) * sigma_1.
  const Eigen::VectorXd gram = oracles::singular_values_via_gram(m);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(s.singular_values[i] - gram[i]) <= 1e-7 * std::max(1.0, gram[0]));
}

TEST_CASE("svd: reconstruction and orthonormal factors") {
  Rng rng(42);
  const Eigen::MatrixXcd m = random_matrix(6, 4, rng);
  const SVDResult s = svd(m, /*with_vectors=*/true);
  const Eigen::MatrixXcd rebuilt = s.left_singular_vectors *
                                   s.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() *
                                   s.right_singular_vectors.adjoint();
  CHECK((rebuilt - m).norm() <= 1e-10 * m.norm());
  for (int i = 0; i + 1 < s.singular_values.size(); ++i)
    CHECK(s.singular_values[i] >= s.singular_values[i + 1]);
  const Eigen::MatrixXcd gram =
      s.right_singular_vectors.adjoint() * s.right_singular_vectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("numerical_kernel_dim: gap rule basics") {
  CHECK(numerical_kernel_dim(Eigen::MatrixXcd::Identity(3, 3), 200.0) == 0);

  Eigen::VectorXd values(3);
  values << 5.0, 1e-14, 1e-15;
  CHECK(numerical_kernel_dim(values, 3, 200.0) == 2);

  // No gap, everything well above the floor: full rank.
  Eigen::VectorXd smooth(4);
  smooth << 1.0, 0.51, 0.26, 0.13;
  CHECK(numerical_kernel_dim(smooth, 4, 200.0) == 0);
  CHECK(numerical_kernel_dim(smooth, 6, 200.0) == 2);  // wide matrix: cols - rank

  // The absolute floor resolves values with no visible gap.
  Eigen::VectorXd tiny(3);
  tiny << 1.0, 1e-12, 1e-13;
  CHECK(numerical_kernel_dim(tiny, 3, 1e6) == 2);

  // The greatest gap wins when several ratios pass the threshold.
  Eigen::VectorXd plunging(4);
  plunging << 1.0, 2e-3, 1e-6, 1e-15;
  CHECK(numerical_kernel_dim(plunging, 4, 200.0) == 1);

  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 5);
  CHECK(numerical_kernel_dim(zero, 200.0) == 5);
  CHECK_THROWS_AS(numerical_kernel_dim(values, 3, 0.5), InputError);
}

TEST_CASE("precondition_rows: pinned and degenerate rows") {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(3, 0), Complex(4, 0), Complex(0, 0), Complex(0, 0);
  const Eigen::MatrixXcd scaled = precondition_rows(m);
  CHECK(std::abs(scaled(0, 0) - Complex(0.6, 0.0)) <= 1e-15);
  CHECK(std::abs(scaled(0, 1) - Complex(0.8, 0.0)) <= 1e-15);
  CHECK(scaled.row(1).norm() == 0.0);
}

TEST_CASE("precondition_rows: every row lands on norm one or zero") {
  Rng rng(17);
  const Eigen::MatrixXcd m = random_matrix(5, 7, rng);
  const Eigen::MatrixXcd scaled = precondition_rows(m);
  for (int i = 0; i < 5; ++i) {
    const double norm = scaled.row(i).norm();
    CHECK((std::abs(norm - 1.0) <= 1e-12 || norm == 0.0));
  }
}

TEST_CASE("row scaling and duplicate rows preserve the kernel dimension") {
  Rng rng(4711);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 3 + static_cast<int>(rng.raw() % 4);  // 3..6
    const int cols = 3 + static_cast<int>(rng.raw() % 4);
    const int rank = 1 + static_cast<int>(rng.raw() % std::min(rows, cols));
    const Eigen::MatrixXcd m =
        random_matrix(rows, rank, rng) * random_matrix(rank, cols, rng);
    CHECK(numerical_kernel_dim(m, 200.0) == cols - rank);
    CHECK(numerical_kernel_dim(precondition_rows(m), 200.0) == cols - rank);

    Eigen::MatrixXcd stacked(rows + 1, cols);
    stacked.topRows(rows) = m;
    stacked.row(rows) = m.row(static_cast<Eigen::Index>(rng.raw() % rows));
    CHECK(numerical_kernel_dim(stacked, 200.0) == cols - rank);
  }
}
