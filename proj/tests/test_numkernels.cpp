#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "hyperlap/errors.hpp"
#include "hyperlap/numkernels.hpp"
#include "test_support.hpp"

using namespace hyperlap;

TEST_SUITE_BEGIN("numkernels");

TEST_CASE("diagonal eigenproblem") {
  Eigen::MatrixXd s(2, 2);
  s << 1, 0, 0, 2;
  const EigenResult r = symmetric_eigen(s, 2);
  CHECK(r.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(r.eigenvectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.eigenvectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvectors(0, 0) > 0.0);  // sign convention
  CHECK(r.eigenvectors(1, 1) > 0.0);
}

TEST_CASE("identity has a degenerate unit spectrum") {
  const EigenResult r = symmetric_eigen(Eigen::MatrixXd::Identity(4, 4), 3);
  for (int i = 0; i < 3; ++i) CHECK(r.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((r.eigenvectors.transpose() * r.eigenvectors)
            .isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-10));
}

TEST_CASE("triangle Laplacian spectrum") {
  const Eigen::MatrixXd l =
      Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
  const EigenResult r = symmetric_eigen(l, 3);
  CHECK(std::abs(r.eigenvalues(0)) < 1e-12);
  CHECK(r.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvalues(2) == doctest::Approx(1.0).epsilon(1e-12));
  // first eigenvector is the constant vector, positive by the sign rule
  for (int i = 0; i < 3; ++i) {
    CHECK(r.eigenvectors(i, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  }
}

TEST_CASE("eigen residual and orthonormality on random symmetric matrices") {
  Rng rng(601);
  for (int n : {20, 80, 200}) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = rng.next_double(-1, 1);
    }
    const Eigen::MatrixXd s = 0.5 * (a + a.transpose());
    const EigenResult r = symmetric_eigen(s, n);
    const double norm = s.norm();
    for (int i = 0; i < n; i += n / 7 + 1) {
      const double residual = (s * r.eigenvectors.col(i) - r.eigenvalues(i) * r.eigenvectors.col(i)).norm();
      CHECK(residual <= 1e-8 * norm);
    }
    CHECK((r.eigenvectors.transpose() * r.eigenvectors - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("asymmetric input is a contract error") {
  Eigen::MatrixXd s(2, 2);
  s << 0, 1, 0, 0;
  CHECK_THROWS_AS(symmetric_eigen(s, 1), NumericalError);
}

TEST_CASE("least squares in the range of a") {
  Eigen::MatrixXd a(2, 1);
  a << 1, 0;
  const Eigen::VectorXd c = min_norm_least_squares(a, Eigen::Vector2d(2, 0));
  CHECK(c(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK((Eigen::Vector2d(2, 0) - a * c).norm() < 1e-12);
}

TEST_CASE("least squares orthogonal to the range") {
  Eigen::MatrixXd a(2, 1);
  a << 1, 0;
  const Eigen::VectorXd c = min_norm_least_squares(a, Eigen::Vector2d(0, 3));
  CHECK(std::abs(c(0)) < 1e-12);
  CHECK((Eigen::Vector2d(0, 3) - a * c).norm() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rank-deficient systems take the minimum-norm solution") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 0, 0;  // two identical columns
  const Eigen::VectorXd c = min_norm_least_squares(a, Eigen::Vector2d(2, 0));
  CHECK(c(0) == doctest::Approx(1.0).epsilon(1e-10));  // weight split equally
  CHECK(c(1) == doctest::Approx(1.0).epsilon(1e-10));

  // spectral pseudo-inverse as an independent oracle on random deficient systems
  Rng rng(602);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 4 + rng.next_int(5);
    const int m = 2 + rng.next_int(4);
    Eigen::MatrixXd basis(d, m);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < m; ++j) basis(i, j) = rng.next_double(-1, 1);
    }
    Eigen::MatrixXd deficient(d, m + 1);
    deficient.leftCols(m) = basis;
    deficient.col(m) = basis.col(0);  // duplicated column forces deficiency
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) b(i) = rng.next_double(-1, 1);

    const Eigen::VectorXd ours = min_norm_least_squares(deficient, b);
    const Eigen::VectorXd oracle = testing::pinv_solve_spectral(deficient, b);
    CHECK((ours - oracle).norm() < 1e-8 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("full-rank least squares matches the normal equations") {
  Rng rng(603);
  Eigen::MatrixXd a(8, 3);
  Eigen::VectorXd b(8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = rng.next_double(-1, 1);
    b(i) = rng.next_double(-1, 1);
  }
  const Eigen::VectorXd ours = min_norm_least_squares(a, b);
  const Eigen::VectorXd normal = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  CHECK((ours - normal).norm() < 1e-8);
}

TEST_CASE("log determinant basics") {
  CHECK(log_abs_det(Eigen::MatrixXd::Identity(2, 2)).sign == 1);
  CHECK(log_abs_det(Eigen::MatrixXd::Identity(2, 2)).log_abs == doctest::Approx(0.0));

  Eigen::MatrixXd d(2, 2);
  d << 2, 0, 0, -3;
  const LogDet r = log_abs_det(d);
  CHECK(r.sign == -1);
  CHECK(r.log_abs == doctest::Approx(std::log(6.0)).epsilon(1e-14));

  Eigen::MatrixXd singular(2, 2);
  singular << 1, 1, 1, 1;
  const LogDet s = log_abs_det(singular);
  CHECK(s.sign == 0);
  CHECK(std::isinf(s.log_abs));
  CHECK(s.log_abs < 0);
}

TEST_CASE("log determinant agrees with direct determinants") {
  Rng rng(604);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + rng.next_int(6);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = rng.next_double(-2, 2);
    }
    const double direct = m.determinant();
    const LogDet ld = log_abs_det(m);
    if (ld.sign == 0) {
      CHECK(std::abs(direct) < 1e-10);
      continue;
    }
    CHECK(ld.sign == (direct > 0 ? 1 : -1));
    CHECK(std::exp(ld.log_abs) == doctest::Approx(std::abs(direct)).epsilon(1e-10));
  }
}

TEST_CASE("spd solve") {
  Eigen::MatrixXd b(3, 2);
  b << 1, 2, 3, 4, 5, 6;
  CHECK(solve_spd(Eigen::MatrixXd::Identity(3, 3), b).isApprox(b, 1e-14));

  Eigen::MatrixXd two = 2.0 * Eigen::MatrixXd::Identity(1, 1);
  Eigen::MatrixXd four(1, 1);
  four << 4;
  CHECK(solve_spd(two, four)(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("spd solve matches the explicit inverse for the shifted triangle Laplacian") {
  const Eigen::MatrixXd l =
      Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
  const Eigen::MatrixXd a = l + Eigen::MatrixXd::Identity(3, 3);
  // (2I - J/3)^{-1} = I/2 + J/6, checked by multiplication
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(3, 3) / 2.0 +
                        Eigen::MatrixXd::Constant(3, 3, 1.0 / 6.0);
  REQUIRE((a * inv).isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-12));
  const Eigen::VectorXd x = solve_spd(a, Eigen::Vector3d(1, 0, 0));
  CHECK((x - inv.col(0)).norm() < 1e-12);
}

TEST_CASE("spd solve rejects indefinite matrices") {
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_THROWS_AS(solve_spd(indefinite, Eigen::MatrixXd::Identity(2, 2)), NumericalError);
}

TEST_CASE("zero eigenvalue counting") {
  Eigen::VectorXd evals(4);
  evals << -1e-12, 1e-9, 0.5, 1.0;
  CHECK(count_zero_eigenvalues(evals) == 2);
  CHECK(zero_eigen_threshold(evals) == doctest::Approx(1e-8));
  Eigen::VectorXd scaled(2);
  scaled << 1e-7, 100.0;
  CHECK(count_zero_eigenvalues(scaled) == 1);  // threshold scales with lambda_max
}

TEST_SUITE_END();
