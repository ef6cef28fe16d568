#pragma once

// Test-only reference computations, kept independent of the library paths
// they check: an expression evaluator that never builds a Polynomial, a
// Gram-matrix route to singular values, companion-matrix root finding, and a
// resultant-based solver for bivariate systems.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "implicitize/polynomial.hpp"

namespace oracles {

using implicitize::Complex;
using implicitize::Polynomial;

/// Evaluates a polynomial expression numerically by recursive descent,
/// sharing no code with parse_polynomial.
Complex eval_expression(const std::string& text, const std::vector<std::string>& variables,
                        const Eigen::VectorXcd& point);

/// Singular values via the eigenvalues of the Gram matrix A* A, descending.
Eigen::VectorXd singular_values_via_gram(const Eigen::MatrixXcd& m);

/// Roots of a univariate polynomial given by ascending coefficients, via the
/// companion matrix. Leading coefficients below 1e-10 of the largest are
/// stripped.
std::vector<Complex> univariate_roots(const std::vector<Complex>& ascending_coefficients);

/// All finite solutions of {p = 0, q = 0} for two bivariate polynomials, by
/// eliminating the second variable with an interpolated Sylvester resultant
/// and polishing with a local Newton step. Solutions are deduplicated at the
/// given tolerance.
std::vector<Eigen::Vector2cd> solve_bivariate(const Polynomial& p, const Polynomial& q,
                                              double tolerance = 1e-8);

/// Central finite-difference Jacobian of the system at x.
Eigen::MatrixXcd finite_difference_jacobian(const std::vector<Polynomial>& polys,
                                            const Eigen::VectorXcd& x, double step = 1e-6);

/// True when the two point sets match pairwise within the tolerance in some
/// order.
bool point_sets_match(const std::vector<Eigen::VectorXcd>& a,
                      const std::vector<Eigen::VectorXcd>& b, double tolerance);

}  // namespace oracles
