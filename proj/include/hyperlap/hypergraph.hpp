#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlap {

/// A hyperedge: vertex indices plus an optional seed vertex (the KNN query
/// point that generated the edge; -1 when absent). Canonical form keeps the
/// indices sorted and unique; validate() reports any deviation.
struct Hyperedge {
  std::vector<int> vertices;
  int seed = -1;

  bool has_seed() const { return seed >= 0; }
  int degree() const { return static_cast<int>(vertices.size()); }
};

/// Sorts and deduplicates the indices; keeps the seed as given.
Hyperedge make_hyperedge(std::vector<int> vertices, int seed = -1);

struct ValidationIssue {
  int edge = -1;  // offending hyperedge index, -1 for graph-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Weighted hypergraph over vertices 0..num_vertices-1. A plain container:
/// it stores what it is given, and validate() reports every violation of the
/// structural invariants instead of aborting.
struct Hypergraph {
  int num_vertices = 0;
  std::vector<Hyperedge> edges;
  std::vector<double> weights;  // one positive weight per hyperedge

  int num_edges() const { return static_cast<int>(edges.size()); }
};

/// Total check: reports out-of-range indices, duplicate vertices, singleton
/// hyperedges, non-positive or non-finite weights, and misplaced seeds.
ValidationReport validate(const Hypergraph& g);

/// Throws DataError with the full report when validate(g) finds any issue.
void require_valid(const Hypergraph& g);

using IncidenceMatrix = Eigen::SparseMatrix<double>;

/// h(v,e) = 1 iff vertex v belongs to hyperedge e.
IncidenceMatrix build_incidence(const Hypergraph& g);

struct DegreeVectors {
  Eigen::VectorXd vertex_degrees;  // d(v): sum of incident hyperedge weights
  Eigen::VectorXi edge_degrees;    // delta(e) = |e|
};

DegreeVectors compute_degrees(const Hypergraph& g);

// Line-oriented text serialization:
//   #vertices=<n>
//   weight<TAB>seed<TAB>v1,v2,...,vk   (seed is -1 when absent)
void write_hypergraph(std::ostream& out, const Hypergraph& g);
Hypergraph read_hypergraph(std::istream& in);
void save_hypergraph(const std::string& path, const Hypergraph& g);
Hypergraph load_hypergraph(const std::string& path);

}  // namespace hyperlap
