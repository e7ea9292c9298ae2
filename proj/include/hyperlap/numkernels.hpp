#pragma once

#include <Eigen/Dense>

namespace hyperlap {

struct EigenResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns aligned to eigenvalues
};

/// The `count` algebraically smallest eigenpairs of a symmetric matrix.
/// Eigenvector signs are fixed so the largest-magnitude entry of each column
/// is positive (ties resolved toward the lower index), which makes
/// embeddings reproducible.
EigenResult symmetric_eigen(const Eigen::MatrixXd& s, int count);

/// Minimum-Euclidean-norm minimizer of ||b - a c||_2.
Eigen::VectorXd min_norm_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

struct LogDet {
  int sign = 0;          // -1, 0, +1
  double log_abs = 0.0;  // -inf when sign == 0
};

/// Sign and log-magnitude of det(m) from a full-pivot LU. The matrix counts
/// as singular when the smallest pivot falls below 1e-12 of the largest.
LogDet log_abs_det(const Eigen::MatrixXd& m);

/// Cholesky solve for a symmetric positive-definite system with one or more
/// right-hand sides.
Eigen::MatrixXd solve_spd(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Threshold below which an eigenvalue counts as zero: 1e-8 * max(1, lambda_max).
double zero_eigen_threshold(const Eigen::VectorXd& eigenvalues);

/// Number of leading eigenvalues within the zero threshold (eigenvalues
/// ascending). Equals the connected-component count for a Laplacian spectrum.
int count_zero_eigenvalues(const Eigen::VectorXd& eigenvalues);

}  // namespace hyperlap
