#include "implicitize/linalg.hpp"

#include <limits>

#include <Eigen/SVD>

#include "implicitize/errors.hpp"

namespace implicitize {

namespace {

// Divide-and-conquer above the size where its cost advantage kicks in;
// two-sided Jacobi below for its accuracy on tiny ill-scaled blocks.
constexpr Eigen::Index kBdcCutoff = 32;

}  // namespace

SVDResult svd(const ComplexMatrix& m, bool with_vectors) {
  if (m.rows() < 1 || m.cols() < 1) throw InputError("svd needs a nonempty matrix");
  SVDResult result;
  const bool large = std::min(m.rows(), m.cols()) >= kBdcCutoff;
  if (with_vectors) {
    const unsigned options = Eigen::ComputeThinU | Eigen::ComputeFullV;
    if (large) {
      Eigen::BDCSVD<ComplexMatrix> dec(m, options);
      result.singular_values = dec.singularValues();
      result.left_singular_vectors = dec.matrixU();
      result.right_singular_vectors = dec.matrixV();
    } else {
      Eigen::JacobiSVD<ComplexMatrix> dec(m, options);
      result.singular_values = dec.singularValues();
      result.left_singular_vectors = dec.matrixU();
      result.right_singular_vectors = dec.matrixV();
    }
  } else {
    if (large) {
      Eigen::BDCSVD<ComplexMatrix> dec(m);
      result.singular_values = dec.singularValues();
    } else {
      Eigen::JacobiSVD<ComplexMatrix> dec(m);
      result.singular_values = dec.singularValues();
    }
  }
  return result;
}

int numerical_kernel_dim(const Eigen::VectorXd& singular_values, Eigen::Index cols,
                         double gap_threshold) {
  if (gap_threshold <= 1.0) throw InputError("gap threshold must exceed 1");
  const Eigen::Index k = singular_values.size();
  if (k == 0) return static_cast<int>(cols);
  const double top = singular_values[0];
  if (top <= 0.0) return static_cast<int>(cols);

  // Greatest gap wins; values past it are zero. Ratios are measured against
  // denominators clamped at the arithmetic noise level, so a cascade of
  // near-machine zeros cannot out-gap the genuine rank boundary.
  const double noise = kSvdNoiseRatio * top;
  Eigen::Index cut = k;  // index of the first zero value
  double best_ratio = 0.0;
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    const double ratio = singular_values[i] / std::max(singular_values[i + 1], noise);
    if (ratio > gap_threshold && ratio > best_ratio) {
      best_ratio = ratio;
      cut = i + 1;
    }
  }
  if (best_ratio > 0.0) return static_cast<int>(cols - cut);

  // No visible gap: the absolute floor settles the tail.
  const double floor = kSingularFloorRatio * top;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (singular_values[i] > floor) ++rank;
  }
  return static_cast<int>(cols - rank);
}

int numerical_kernel_dim(const ComplexMatrix& m, double gap_threshold) {
  if (m.rows() == 0 || m.cols() == 0) return static_cast<int>(m.cols());
  return numerical_kernel_dim(svd(m).singular_values, m.cols(), gap_threshold);
}

ComplexMatrix precondition_rows(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return out;
}

}  // namespace implicitize
