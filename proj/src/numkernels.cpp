#include "hyperlap/numkernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hyperlap/errors.hpp"

namespace hyperlap {

namespace {

void fix_column_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (vectors(pivot, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

}  // namespace

EigenResult symmetric_eigen(const Eigen::MatrixXd& s, int count) {
  const Eigen::Index n = s.rows();
  if (s.cols() != n) {
    throw NumericalError("symmetric_eigen: matrix is not square");
  }
  if (n > 0) {
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
      throw NumericalError("symmetric_eigen: input is not symmetric");
    }
  }
  if (count < 1 || count > n) {
    throw ConfigError("symmetric_eigen: count " + std::to_string(count) +
                      " out of range for dimension " + std::to_string(n));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigen: eigendecomposition failed");
  }

  EigenResult result;
  result.eigenvalues = solver.eigenvalues().head(count);
  result.eigenvectors = solver.eigenvectors().leftCols(count);
  fix_column_signs(result.eigenvectors);
  return result;
}

Eigen::VectorXd min_norm_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return cod.solve(b);
}

LogDet log_abs_det(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) {
    throw NumericalError("log_abs_det: matrix is not square");
  }
  if (n == 0) return {+1, 0.0};

  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  if (lu.rank() < n) {
    return {0, -std::numeric_limits<double>::infinity()};
  }

  const Eigen::VectorXd diag = lu.matrixLU().diagonal();
  int sign = static_cast<int>(lu.permutationP().determinant() *
                              lu.permutationQ().determinant());
  double log_abs = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (diag(i) < 0.0) sign = -sign;
    log_abs += std::log(std::abs(diag(i)));
  }
  return {sign, log_abs};
}

Eigen::MatrixXd solve_spd(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw NumericalError("solve_spd: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("solve_spd: matrix is not positive definite");
  }
  return llt.solve(b);
}

double zero_eigen_threshold(const Eigen::VectorXd& eigenvalues) {
  const double lambda_max = eigenvalues.size() > 0 ? eigenvalues.maxCoeff() : 0.0;
  return 1e-8 * std::max(1.0, lambda_max);
}

int count_zero_eigenvalues(const Eigen::VectorXd& eigenvalues) {
  const double threshold = zero_eigen_threshold(eigenvalues);
  int count = 0;
  while (count < eigenvalues.size() && std::abs(eigenvalues(count)) <= threshold) {
    ++count;
  }
  return count;
}

}  // namespace hyperlap
