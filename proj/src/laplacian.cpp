#include "hyperlap/laplacian.hpp"

#include <cmath>

#include "hyperlap/errors.hpp"

namespace hyperlap {

Framework parse_framework(const std::string& name) {
  if (name == "zhou") return Framework::zhou;
  if (name == "clique") return Framework::clique;
  if (name == "star") return Framework::star;
  throw ConfigError("unknown framework '" + name + "' (expected zhou, clique or star)");
}

std::string to_string(Framework framework) {
  switch (framework) {
    case Framework::zhou: return "zhou";
    case Framework::clique: return "clique";
    case Framework::star: return "star";
  }
  return "?";
}

std::vector<Framework> all_frameworks() {
  return {Framework::zhou, Framework::clique, Framework::star};
}

namespace {

// Diagonal pseudo-inverse rule: zero degrees invert to zero, which turns the
// corresponding Laplacian row into an identity row.
Eigen::VectorXd inv_sqrt(const Eigen::VectorXd& degrees) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(degrees.size());
  for (Eigen::Index i = 0; i < degrees.size(); ++i) {
    if (degrees(i) > 0.0) out(i) = 1.0 / std::sqrt(degrees(i));
  }
  return out;
}

Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& smoother,
                                     const Eigen::VectorXd& degrees) {
  const Eigen::VectorXd dinv = inv_sqrt(degrees);
  Eigen::MatrixXd l = -(dinv.asDiagonal() * smoother * dinv.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

}  // namespace

Eigen::MatrixXd clique_adjacency(const Hypergraph& g) {
  require_valid(g);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices, g.num_vertices);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& verts = g.edges[static_cast<std::size_t>(e)].vertices;
    const double w = g.weights[static_cast<std::size_t>(e)];
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        a(verts[i], verts[j]) += w;
        a(verts[j], verts[i]) += w;
      }
    }
  }
  return a;
}

LaplacianMatrix clique_expansion(const Hypergraph& g) {
  const Eigen::MatrixXd a = clique_adjacency(g);
  return {normalized_laplacian(a, a.rowwise().sum()), Framework::clique};
}

LaplacianMatrix star_expansion(const Hypergraph& g) {
  require_valid(g);
  const int n = g.num_vertices;
  // With M(u,e) = w(e)/delta(e), the auxiliary-vertex degree is exactly w(e),
  // so M D_e^{-1} M^T accumulates w(e)/delta(e)^2 over each vertex pair.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd star_degrees = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& verts = g.edges[static_cast<std::size_t>(e)].vertices;
    const double w = g.weights[static_cast<std::size_t>(e)];
    const double delta = static_cast<double>(verts.size());
    for (int u : verts) star_degrees(u) += w / delta;
    const double pair_mass = w / (delta * delta);
    for (int u : verts) {
      for (int v : verts) s(u, v) += pair_mass;
    }
  }
  return {normalized_laplacian(s, star_degrees), Framework::star};
}

LaplacianMatrix zhou_laplacian(const Hypergraph& g) {
  require_valid(g);
  const int n = g.num_vertices;
  // (H W D_e^{-1} H^T)(u,v) sums w(e)/delta(e) over hyperedges containing
  // both u and v, the diagonal included.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd degrees = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& verts = g.edges[static_cast<std::size_t>(e)].vertices;
    const double w = g.weights[static_cast<std::size_t>(e)];
    const double pair_mass = w / static_cast<double>(verts.size());
    for (int u : verts) degrees(u) += w;
    for (int u : verts) {
      for (int v : verts) s(u, v) += pair_mass;
    }
  }
  return {normalized_laplacian(s, degrees), Framework::zhou};
}

LaplacianMatrix build_laplacian(const Hypergraph& g, Framework framework) {
  switch (framework) {
    case Framework::zhou: return zhou_laplacian(g);
    case Framework::clique: return clique_expansion(g);
    case Framework::star: return star_expansion(g);
  }
  throw ConfigError("unknown framework");
}

}  // namespace hyperlap
