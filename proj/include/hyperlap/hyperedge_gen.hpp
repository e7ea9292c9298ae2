#pragma once

#include <Eigen/Core>
#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

/// One row per sample, one column per feature; the row index is the vertex id.
using SampleMatrix = Eigen::MatrixXd;

/// Throws DataError unless every entry is finite, n >= 2 and d >= 1.
void check_samples(const SampleMatrix& x);

struct NeighborhoodSpec {
  std::vector<int> k_list;  // strictly increasing, each 0 < k < n
};

/// One hyperedge per vertex: the seed plus its k nearest neighbours under
/// squared Euclidean distance, so every hyperedge has k+1 vertices. Distance
/// ties break toward the smaller vertex index; the seed is never its own
/// neighbour. Weights start at 1.
Hypergraph knn_hyperedges(const SampleMatrix& x, int k);

/// Union of knn_hyperedges over every k in the spec, with exact-duplicate
/// vertex sets removed (first occurrence kept, including its seed).
Hypergraph multi_k_hyperedges(const SampleMatrix& x, const NeighborhoodSpec& spec);

/// Squared Euclidean distances between the members of e, in the order the
/// hyperedge lists them. Zero diagonal, symmetric.
Eigen::MatrixXd pairwise_sq_distances(const SampleMatrix& x, const Hyperedge& e);

}  // namespace hyperlap
