#include "hyperlap/hyperedge_gen.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "hyperlap/errors.hpp"

namespace hyperlap {

void check_samples(const SampleMatrix& x) {
  if (x.rows() < 2) throw DataError("sample matrix needs at least 2 rows");
  if (x.cols() < 1) throw DataError("sample matrix needs at least 1 feature column");
  if (!x.allFinite()) throw DataError("sample matrix contains a non-finite entry");
}

namespace {

void check_k(int k, Eigen::Index n) {
  if (k < 1) throw ConfigError("k must be positive, got " + std::to_string(k));
  if (k >= n) {
    throw ConfigError("k=" + std::to_string(k) + " must be smaller than the sample count " +
                      std::to_string(n));
  }
}

}  // namespace

Hypergraph knn_hyperedges(const SampleMatrix& x, int k) {
  check_samples(x);
  const int n = static_cast<int>(x.rows());
  check_k(k, n);

  Hypergraph g;
  g.num_vertices = n;
  g.edges.reserve(static_cast<std::size_t>(n));
  g.weights.assign(static_cast<std::size_t>(n), 1.0);

  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(static_cast<std::size_t>(n) - 1);
  for (int seed = 0; seed < n; ++seed) {
    ranked.clear();
    for (int j = 0; j < n; ++j) {
      if (j == seed) continue;
      ranked.emplace_back((x.row(seed) - x.row(j)).squaredNorm(), j);
    }
    // ties break toward the smaller vertex index
    std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());

    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(k) + 1);
    members.push_back(seed);
    for (int i = 0; i < k; ++i) members.push_back(ranked[static_cast<std::size_t>(i)].second);
    g.edges.push_back(make_hyperedge(std::move(members), seed));
  }
  return g;
}

Hypergraph multi_k_hyperedges(const SampleMatrix& x, const NeighborhoodSpec& spec) {
  check_samples(x);
  const int n = static_cast<int>(x.rows());
  if (spec.k_list.empty()) throw ConfigError("k_list must not be empty");
  for (std::size_t i = 0; i < spec.k_list.size(); ++i) {
    check_k(spec.k_list[i], n);
    if (i > 0 && spec.k_list[i] <= spec.k_list[i - 1]) {
      throw ConfigError("k_list must be strictly increasing");
    }
  }

  Hypergraph g;
  g.num_vertices = n;
  std::set<std::vector<int>> seen;
  for (int k : spec.k_list) {
    Hypergraph layer = knn_hyperedges(x, k);
    for (std::size_t e = 0; e < layer.edges.size(); ++e) {
      if (seen.insert(layer.edges[e].vertices).second) {
        g.edges.push_back(std::move(layer.edges[e]));
        g.weights.push_back(layer.weights[e]);
      }
    }
  }
  return g;
}

Eigen::MatrixXd pairwise_sq_distances(const SampleMatrix& x, const Hyperedge& e) {
  check_samples(x);
  const int m = e.degree();
  for (int v : e.vertices) {
    if (v < 0 || v >= x.rows()) {
      throw DataError("hyperedge vertex " + std::to_string(v) + " out of range for " +
                      std::to_string(x.rows()) + " samples");
    }
  }
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = (x.row(e.vertices[static_cast<std::size_t>(i)]) -
                        x.row(e.vertices[static_cast<std::size_t>(j)]))
                           .squaredNorm();
      d2(i, j) = d;
      d2(j, i) = d;
    }
  }
  return d2;
}

}  // namespace hyperlap
