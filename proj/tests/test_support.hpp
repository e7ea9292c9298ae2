#pragma once

// Shared generators and independent oracles for the test suites.

#include <Eigen/Dense>
#include <vector>

#include "hyperlap/hypergraph.hpp"
#include "hyperlap/rng.hpp"

namespace hyperlap::testing {

inline Hypergraph random_hypergraph(Rng& rng, int max_vertices = 50, int max_edges = 40) {
  Hypergraph g;
  g.num_vertices = 5 + rng.next_int(max_vertices - 4);
  const int edges = 3 + rng.next_int(max_edges - 2);
  for (int e = 0; e < edges; ++e) {
    const int size = 2 + rng.next_int(std::min(5, g.num_vertices - 1));
    std::vector<int> verts;
    while (static_cast<int>(verts.size()) < size) {
      const int v = rng.next_int(g.num_vertices);
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    g.edges.push_back(make_hyperedge(std::move(verts)));
    g.weights.push_back(rng.next_double(0.1, 10.0));
  }
  return g;
}

/// Random k-simplex vertices, coordinates U[-1, 1], as (k+1) x d rows.
inline Eigen::MatrixXd random_simplex(Rng& rng, int k, int d) {
  Eigen::MatrixXd points(k + 1, d);
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j < d; ++j) points(i, j) = rng.next_double(-1.0, 1.0);
  }
  return points;
}

struct Blobs {
  Eigen::MatrixXd features;
  std::vector<int> labels;
};

/// Gaussian blobs with the given centers (rows) and spread.
inline Blobs make_blobs(Rng& rng, const Eigen::MatrixXd& centers, int per_blob, double sigma) {
  Blobs blobs;
  blobs.features.resize(centers.rows() * per_blob, centers.cols());
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    for (int i = 0; i < per_blob; ++i) {
      const Eigen::Index row = c * per_blob + i;
      for (Eigen::Index j = 0; j < centers.cols(); ++j) {
        blobs.features(row, j) = centers(c, j) + sigma * rng.next_gaussian();
      }
      blobs.labels.push_back(static_cast<int>(c));
    }
  }
  return blobs;
}

/// Three well-separated blobs in 8 dimensions, centers pairwise >= 10 apart
/// and away from the origin.
inline Blobs separated_blobs(std::uint64_t seed, int per_blob = 20, double sigma = 0.1) {
  Eigen::MatrixXd centers = Eigen::MatrixXd::Constant(3, 8, 10.0);
  centers(1, 0) += 20.0;
  centers(2, 1) += 20.0;
  Rng rng(seed);
  return make_blobs(rng, centers, per_blob, sigma);
}

/// Pseudo-inverse solution via the spectral decomposition of a^T a; an
/// independent route for checking minimum-norm least squares.
inline Eigen::VectorXd pinv_solve_spectral(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double tol = 1e-12 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd inv_vals = Eigen::VectorXd::Zero(gram.rows());
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    if (eig.eigenvalues()(i) > tol) inv_vals(i) = 1.0 / eig.eigenvalues()(i);
  }
  return eig.eigenvectors() * inv_vals.asDiagonal() * eig.eigenvectors().transpose() *
         a.transpose() * b;
}

}  // namespace hyperlap::testing
