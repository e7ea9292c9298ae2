#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

enum class Framework { zhou, clique, star };

Framework parse_framework(const std::string& name);
std::string to_string(Framework framework);
std::vector<Framework> all_frameworks();

struct LaplacianMatrix {
  Eigen::MatrixXd matrix;  // symmetric |V| x |V|
  Framework framework = Framework::zhou;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Adjacency of the clique-expanded pairwise graph: w_c(u,v) sums the
/// weights of the hyperedges containing both endpoints. Zero diagonal.
Eigen::MatrixXd clique_adjacency(const Hypergraph& g);

/// Normalized graph Laplacian I - D^{-1/2} A D^{-1/2} of the clique
/// expansion. Eigenvalues lie in [0, 2].
LaplacianMatrix clique_expansion(const Hypergraph& g);

/// Star expansion: one auxiliary vertex per hyperedge with edge weights
/// w(e)/delta(e), folded back to the |V| x |V| normalized Laplacian.
/// Eigenvalues lie in [0, 1].
LaplacianMatrix star_expansion(const Hypergraph& g);

/// Random-walk normalized hypergraph Laplacian
/// I - D_v^{-1/2} H W D_e^{-1} H^T D_v^{-1/2}. Eigenvalues lie in [0, 1] and
/// the square root of the vertex-degree vector spans the zero eigenspace on
/// connected inputs.
LaplacianMatrix zhou_laplacian(const Hypergraph& g);

LaplacianMatrix build_laplacian(const Hypergraph& g, Framework framework);

}  // namespace hyperlap
