#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "hyperlap/laplacian.hpp"

namespace hyperlap {

struct Embedding {
  // |V| x m, column j = eigenvector of the j-th smallest eigenvalue strictly
  // above the zero threshold
  Eigen::MatrixXd coordinates;
};

/// Normalized-cut relaxation: the m eigenvectors of the Laplacian whose
/// eigenvalues are the smallest ones strictly above the zero threshold.
/// Throws NumericalError naming the component count when fewer than m
/// nonzero eigenvalues exist.
Embedding spectral_embed(const LaplacianMatrix& l, int m);

/// Lloyd's algorithm with k-means++ seeding. Deterministic for a fixed seed;
/// each restart draws from an independently derived stream and the lowest
/// within-cluster sum of squares wins (ties to the earliest restart).
std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts);

/// Spectral clustering: k-means on the Laplacian embedding. On disconnected
/// inputs the zero-eigenvalue eigenvectors carry the component indicators
/// and are kept in the embedding; on connected inputs the single trivial
/// eigenvector is dropped, matching spectral_embed.
std::vector<int> cluster(const LaplacianMatrix& l, int num_classes, std::uint64_t seed,
                         int restarts);

/// Seed-label matrix: labels[i] in [0,c) marks vertex i with +1 in its class
/// column and -1 elsewhere; labels[i] == -1 leaves the row zero.
Eigen::MatrixXd build_label_matrix(const std::vector<int>& labels, int c);

struct ClassifyResult {
  Eigen::MatrixXd scores;   // F = (L + lambda I)^{-1} Y
  std::vector<int> labels;  // argmax per row, ties to the smaller class index
};

/// Transductive label propagation: regularized solve of
/// (L + lambda I) F = Y, then per-vertex argmax.
ClassifyResult classify(const LaplacianMatrix& l, const Eigen::MatrixXd& y, double lambda);

/// Fraction of agreements under the best bijection between predicted cluster
/// ids and true class ids (Hungarian matching on the contingency table).
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

/// Normalized mutual information I(p;t)/sqrt(H(p) H(t)). Equivalent
/// partitions give exactly 1; if either partition is a single cluster and
/// they differ, the value is 0.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

}  // namespace hyperlap
