#pragma once

#include <Eigen/Dense>

namespace implicitize {

using ComplexMatrix = Eigen::MatrixXcd;

/// Ratio of consecutive singular values above which everything past the gap
/// is treated as numerically zero.
inline constexpr double kDefaultGapThreshold = 200.0;

/// Singular values below this fraction of the largest one are treated as
/// zero when the spectrum shows no visible gap. Sits just above the
/// double-precision noise of a dense SVD, below the honest tails of
/// ill-conditioned full-rank interpolation matrices.
inline constexpr double kSingularFloorRatio = 1e-13;

/// Resolution limit of double-precision singular values relative to the
/// largest one; ratios between values under this level are arithmetic noise
/// and never count as gaps.
inline constexpr double kSvdNoiseRatio = 1e-15;

struct SVDResult {
  Eigen::VectorXd singular_values;            // sorted descending
  Eigen::MatrixXcd left_singular_vectors;     // empty unless requested
  Eigen::MatrixXcd right_singular_vectors;    // empty unless requested
};

SVDResult svd(const ComplexMatrix& m, bool with_vectors = false);

/// Numerical kernel dimension by the gap rule: find the greatest ratio of
/// consecutive singular values; if it exceeds the threshold, every value past
/// it is zero. Values below the absolute floor are zero regardless. An empty
/// or all-zero matrix has a full kernel.
int numerical_kernel_dim(const Eigen::VectorXd& singular_values, Eigen::Index cols,
                         double gap_threshold = kDefaultGapThreshold);
int numerical_kernel_dim(const ComplexMatrix& m, double gap_threshold = kDefaultGapThreshold);

inline int numerical_rank(const ComplexMatrix& m, double gap_threshold = kDefaultGapThreshold) {
  return static_cast<int>(m.cols()) - numerical_kernel_dim(m, gap_threshold);
}

/// Scales every nonzero row to Euclidean norm 1; zero rows pass through.
ComplexMatrix precondition_rows(const ComplexMatrix& m);

}  // namespace implicitize
