#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <set>

#include "hyperlap/errors.hpp"
#include "hyperlap/hyperedge_gen.hpp"
#include "test_support.hpp"

using namespace hyperlap;

namespace {

// brute-force neighbour oracle with the same tie rule (smaller index wins)
std::vector<int> brute_force_knn(const SampleMatrix& x, int seed, int k) {
  std::vector<std::pair<double, int>> ranked;
  for (int j = 0; j < x.rows(); ++j) {
    if (j == seed) continue;
    ranked.emplace_back((x.row(seed) - x.row(j)).squaredNorm(), j);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> members{seed};
  for (int i = 0; i < k; ++i) members.push_back(ranked[static_cast<std::size_t>(i)].second);
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

TEST_SUITE_BEGIN("hyperedge-gen");

TEST_CASE("nearest neighbours on a 1-D line") {
  SampleMatrix x(3, 1);
  x << 0, 1, 10;
  const Hypergraph g = knn_hyperedges(x, 1);
  REQUIRE(g.num_edges() == 3);
  CHECK(g.edges[0].vertices == std::vector<int>{0, 1});
  CHECK(g.edges[0].seed == 0);
  CHECK(g.edges[1].vertices == std::vector<int>{0, 1});
  CHECK(g.edges[1].seed == 1);
  CHECK(g.edges[2].vertices == std::vector<int>{1, 2});
  CHECK(g.edges[2].seed == 2);
  CHECK(g.weights == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("k = n-1 gives the full vertex set everywhere") {
  Rng rng(501);
  SampleMatrix x(6, 2);
  for (int i = 0; i < 6; ++i) {
    x(i, 0) = rng.next_double();
    x(i, 1) = rng.next_double();
  }
  const Hypergraph g = knn_hyperedges(x, 5);
  for (const Hyperedge& e : g.edges) {
    CHECK(e.vertices == std::vector<int>{0, 1, 2, 3, 4, 5});
  }
}

TEST_CASE("unit square corners pick side-adjacent neighbours") {
  SampleMatrix x(4, 2);
  x << 0, 0, 1, 0, 1, 1, 0, 1;
  const Hypergraph g = knn_hyperedges(x, 2);
  for (int seed = 0; seed < 4; ++seed) {
    CHECK(g.edges[static_cast<std::size_t>(seed)].vertices == brute_force_knn(x, seed, 2));
    // diagonal corner excluded
    const int diagonal = (seed + 2) % 4;
    const auto& verts = g.edges[static_cast<std::size_t>(seed)].vertices;
    CHECK(std::find(verts.begin(), verts.end(), diagonal) == verts.end());
  }
}

TEST_CASE("knn matches the brute-force oracle on random data") {
  Rng rng(502);
  SampleMatrix x(25, 3);
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) x(i, j) = rng.next_double(-1, 1);
  }
  const Hypergraph g = knn_hyperedges(x, 4);
  for (int seed = 0; seed < x.rows(); ++seed) {
    CHECK(g.edges[static_cast<std::size_t>(seed)].vertices == brute_force_knn(x, seed, 4));
  }
}

TEST_CASE("parameter and data errors") {
  SampleMatrix x(3, 1);
  x << 0, 1, 2;
  CHECK_THROWS_AS(knn_hyperedges(x, 3), ConfigError);
  CHECK_THROWS_AS(knn_hyperedges(x, 0), ConfigError);
  x(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(knn_hyperedges(x, 1), DataError);
}

TEST_CASE("every vertex seeds exactly one hyperedge") {
  Rng rng(503);
  SampleMatrix x(30, 2);
  for (int i = 0; i < x.rows(); ++i) {
    x(i, 0) = rng.next_double();
    x(i, 1) = rng.next_double();
  }
  const Hypergraph g = knn_hyperedges(x, 3);
  std::set<int> seeds;
  for (const Hyperedge& e : g.edges) seeds.insert(e.seed);
  CHECK(static_cast<int>(seeds.size()) == g.num_vertices);
}

TEST_CASE("knn output is invariant under rigid motions") {
  Rng rng(504);
  SampleMatrix x(20, 3);
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) x(i, j) = rng.next_double(-1, 1);
  }
  Eigen::MatrixXd noise(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) noise(i, j) = rng.next_double(-1, 1);
  }
  const Eigen::MatrixXd rotation =
      Eigen::HouseholderQR<Eigen::MatrixXd>(noise).householderQ();
  const Eigen::RowVector3d shift(3.5, -2.0, 11.0);

  const SampleMatrix moved = (x * rotation.transpose()).rowwise() + shift;
  const Hypergraph before = knn_hyperedges(x, 4);
  const Hypergraph after = knn_hyperedges(moved, 4);
  for (int e = 0; e < before.num_edges(); ++e) {
    CHECK(before.edges[static_cast<std::size_t>(e)].vertices ==
          after.edges[static_cast<std::size_t>(e)].vertices);
  }
}

TEST_CASE("multi-k with a singleton list equals plain knn") {
  // neighbourhoods chosen pairwise distinct, so deduplication has no effect
  SampleMatrix x(4, 2);
  x << 0, 0, 1, 0, 1.1, 1, -0.2, 1.2;
  const Hypergraph a = knn_hyperedges(x, 2);
  const Hypergraph b = multi_k_hyperedges(x, {{2}});
  REQUIRE(a.num_edges() == b.num_edges());
  for (int e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edges[static_cast<std::size_t>(e)].vertices ==
          b.edges[static_cast<std::size_t>(e)].vertices);
  }
}

TEST_CASE("multi-k union on three collinear points, enumerated by hand") {
  // k=1 per seed: {0,1}(seed 0), {0,1}(seed 1, nearest tie -> 0), {1,2}(seed 2);
  // k=2: {0,1,2} three times. Deduplication keeps first occurrences.
  SampleMatrix x(3, 1);
  x << 0, 1, 2;
  const Hypergraph g = multi_k_hyperedges(x, {{1, 2}});
  REQUIRE(g.num_edges() == 3);
  CHECK(g.edges[0].vertices == std::vector<int>{0, 1});
  CHECK(g.edges[0].seed == 0);
  CHECK(g.edges[1].vertices == std::vector<int>{1, 2});
  CHECK(g.edges[1].seed == 2);
  CHECK(g.edges[2].vertices == std::vector<int>{0, 1, 2});
  CHECK(g.edges[2].seed == 0);
}

TEST_CASE("multi-k collapses identical full sets") {
  SampleMatrix x(3, 1);
  x << 0, 1, 5;
  const Hypergraph g = multi_k_hyperedges(x, {{2}});
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edges[0].vertices == std::vector<int>{0, 1, 2});
}

TEST_CASE("multi-k spec validation") {
  SampleMatrix x(4, 1);
  x << 0, 1, 2, 3;
  CHECK_THROWS_AS(multi_k_hyperedges(x, {{}}), ConfigError);
  CHECK_THROWS_AS(multi_k_hyperedges(x, {{2, 2}}), ConfigError);
  CHECK_THROWS_AS(multi_k_hyperedges(x, {{3, 1}}), ConfigError);
  CHECK_THROWS_AS(multi_k_hyperedges(x, {{1, 4}}), ConfigError);
}

TEST_CASE("multi-k output is deterministic and duplicate-free") {
  Rng rng(505);
  SampleMatrix x(15, 2);
  for (int i = 0; i < x.rows(); ++i) {
    x(i, 0) = rng.next_double();
    x(i, 1) = rng.next_double();
  }
  const Hypergraph a = multi_k_hyperedges(x, {{2, 4}});
  const Hypergraph b = multi_k_hyperedges(x, {{2, 4}});
  REQUIRE(a.num_edges() == b.num_edges());
  std::set<std::vector<int>> sets;
  for (int e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edges[static_cast<std::size_t>(e)].vertices ==
          b.edges[static_cast<std::size_t>(e)].vertices);
    CHECK(a.edges[static_cast<std::size_t>(e)].seed == b.edges[static_cast<std::size_t>(e)].seed);
    CHECK(sets.insert(a.edges[static_cast<std::size_t>(e)].vertices).second);
  }
}

TEST_CASE("pairwise squared distances") {
  SampleMatrix x(2, 2);
  x << 0, 0, 3, 4;
  const Eigen::MatrixXd d2 = pairwise_sq_distances(x, make_hyperedge({0, 1}));
  CHECK(d2(0, 1) == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(d2(0, 0) == 0.0);
  CHECK(d2(1, 0) == d2(0, 1));

  SampleMatrix same(3, 2);
  same << 1, 2, 1, 2, 1, 2;
  CHECK(pairwise_sq_distances(same, make_hyperedge({0, 1, 2})).cwiseAbs().maxCoeff() == 0.0);

  SampleMatrix square(4, 2);
  square << 0, 0, 1, 0, 1, 1, 0, 1;
  const Eigen::MatrixXd sq = pairwise_sq_distances(square, make_hyperedge({0, 1, 2, 3}));
  for (int i = 0; i < 4; ++i) {
    std::multiset<double> row;
    for (int j = 0; j < 4; ++j) {
      if (j != i) row.insert(sq(i, j));
    }
    CHECK(row == std::multiset<double>{1.0, 1.0, 2.0});
  }
}

TEST_SUITE_END();
