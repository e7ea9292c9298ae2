#include "hyperlap/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hyperlap/errors.hpp"

namespace hyperlap {

Hyperedge make_hyperedge(std::vector<int> vertices, int seed) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return Hyperedge{std::move(vertices), seed};
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) out << "; ";
    if (issues[i].edge >= 0) out << "hyperedge " << issues[i].edge << ": ";
    out << issues[i].message;
  }
  return out.str();
}

ValidationReport validate(const Hypergraph& g) {
  ValidationReport report;
  auto add = [&report](int edge, std::string message) {
    report.issues.push_back({edge, std::move(message)});
  };

  if (g.num_vertices < 0) add(-1, "negative vertex count");
  if (g.weights.size() != g.edges.size()) {
    add(-1, "weight count " + std::to_string(g.weights.size()) +
                " does not match hyperedge count " + std::to_string(g.edges.size()));
  }

  for (int e = 0; e < g.num_edges(); ++e) {
    const Hyperedge& edge = g.edges[static_cast<std::size_t>(e)];
    std::set<int> seen;
    for (int v : edge.vertices) {
      if (v < 0 || v >= g.num_vertices) {
        add(e, "vertex index " + std::to_string(v) + " out of range [0, " +
                   std::to_string(g.num_vertices) + ")");
      } else if (!seen.insert(v).second) {
        add(e, "duplicate vertex " + std::to_string(v));
      }
    }
    if (seen.size() < 2) add(e, "fewer than 2 distinct vertices");
    if (edge.seed != -1) {
      if (edge.seed < 0) {
        add(e, "invalid seed index " + std::to_string(edge.seed));
      } else if (seen.count(edge.seed) == 0) {
        add(e, "seed " + std::to_string(edge.seed) + " is not a member of the hyperedge");
      }
    }
    if (static_cast<std::size_t>(e) < g.weights.size()) {
      const double w = g.weights[static_cast<std::size_t>(e)];
      if (!std::isfinite(w)) {
        add(e, "non-finite weight");
      } else if (w <= 0.0) {
        add(e, "non-positive weight " + std::to_string(w));
      }
    }
  }
  return report;
}

void require_valid(const Hypergraph& g) {
  const ValidationReport report = validate(g);
  if (!report.ok()) {
    throw DataError("invalid hypergraph: " + report.to_string());
  }
}

IncidenceMatrix build_incidence(const Hypergraph& g) {
  require_valid(g);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int v : g.edges[static_cast<std::size_t>(e)].vertices) {
      triplets.emplace_back(v, e, 1.0);
    }
  }
  IncidenceMatrix h(g.num_vertices, g.num_edges());
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.makeCompressed();
  return h;
}

DegreeVectors compute_degrees(const Hypergraph& g) {
  require_valid(g);
  DegreeVectors d;
  d.vertex_degrees = Eigen::VectorXd::Zero(g.num_vertices);
  d.edge_degrees = Eigen::VectorXi::Zero(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Hyperedge& edge = g.edges[static_cast<std::size_t>(e)];
    d.edge_degrees(e) = edge.degree();
    for (int v : edge.vertices) {
      d.vertex_degrees(v) += g.weights[static_cast<std::size_t>(e)];
    }
  }
  return d;
}

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_hypergraph(std::ostream& out, const Hypergraph& g) {
  out << "#vertices=" << g.num_vertices << "\n";
  for (int e = 0; e < g.num_edges(); ++e) {
    const Hyperedge& edge = g.edges[static_cast<std::size_t>(e)];
    out << format_double(g.weights[static_cast<std::size_t>(e)]) << '\t' << edge.seed << '\t';
    for (std::size_t i = 0; i < edge.vertices.size(); ++i) {
      if (i > 0) out << ',';
      out << edge.vertices[i];
    }
    out << "\n";
  }
}

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("hypergraph stream: missing '#vertices=' header");
  }
  const std::string prefix = "#vertices=";
  if (line.rfind(prefix, 0) != 0) {
    throw DataError("hypergraph stream: line 1 does not start with '#vertices='");
  }
  Hypergraph g;
  try {
    g.num_vertices = std::stoi(line.substr(prefix.size()));
  } catch (const std::exception&) {
    throw DataError("hypergraph stream: unparsable vertex count '" + line + "'");
  }

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string weight_str, seed_str, verts_str;
    if (!std::getline(fields, weight_str, '\t') || !std::getline(fields, seed_str, '\t') ||
        !std::getline(fields, verts_str)) {
      throw DataError("hypergraph stream: line " + std::to_string(line_no) +
                      " is not 'weight<TAB>seed<TAB>v1,v2,...'");
    }
    try {
      g.weights.push_back(std::stod(weight_str));
      Hyperedge edge;
      edge.seed = std::stoi(seed_str);
      std::istringstream verts(verts_str);
      std::string tok;
      while (std::getline(verts, tok, ',')) {
        edge.vertices.push_back(std::stoi(tok));
      }
      g.edges.push_back(std::move(edge));
    } catch (const std::exception&) {
      throw DataError("hypergraph stream: unparsable field on line " + std::to_string(line_no));
    }
  }
  return g;
}

void save_hypergraph(const std::string& path, const Hypergraph& g) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_hypergraph(out, g);
  if (!out) throw DataError("write failed for '" + path + "'");
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return read_hypergraph(in);
}

}  // namespace hyperlap
