#pragma once

#include <cstdint>
#include <vector>

#include "implicitize/linalg.hpp"
#include "implicitize/sampler.hpp"

namespace implicitize {

/// Result of one interpolation run: the value of the Hilbert function of the
/// projective closure of the image at the degree argument, together with the
/// matrix, its spectrum, and the sample points that produced it.
struct NumericalInterpolationTable {
  int degree_argument = 0;
  int num_monomials = 0;
  ComplexMatrix interpolation_matrix;       // row-normalized, square
  Eigen::VectorXd singular_values;          // descending
  Eigen::MatrixXcd right_singular_vectors;  // columns paired with the values
  int hilbert_value = 0;
  std::vector<Eigen::VectorXcd> sample_points;
  double gap_threshold = kDefaultGapThreshold;
};

/// Rows indexed by the points, columns by the degree-d monomials of the
/// ambient coordinates in graded-lexicographic order; entries are monomial
/// values and every row is scaled to Euclidean norm 1.
ComplexMatrix build_interpolation_matrix(const std::vector<Eigen::VectorXcd>& points, int degree);

/// Samples exactly as many general cone points as there are degree-d
/// monomials, builds the square interpolation matrix, and reads the kernel
/// dimension off the gap in its singular values.
NumericalInterpolationTable numerical_hilbert_function(const ProblemSpec& spec,
                                                       const SourceWitness& witness,
                                                       const ConeMap& cone, int degree,
                                                       double gap_threshold, std::uint64_t seed,
                                                       const TrackSettings& settings = {},
                                                       int threads = 1);

/// Coefficient vectors of an approximate basis for the degree-d forms that
/// vanish on the image: the right singular vectors paired with the
/// numerically-zero singular values, each of unit norm. Empty when the
/// Hilbert value is zero.
std::vector<Eigen::VectorXcd> extract_image_equations(const NumericalInterpolationTable& table);

}  // namespace implicitize
