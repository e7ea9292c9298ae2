#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "hyperlap/hyperedge_gen.hpp"
#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

enum class WeightScheme {
  binary,
  sum,
  centroid,
  volume_gram,
  volume_cayley_menger,
  volume_hyperface,
  trace,
  llre,
};

enum class SumAggregator { sum, mean };
enum class LlreAggregator { seed, mean, min, max };

// CLI names: binary, sum, centroid, volume-gram, volume-cm, volume-face,
// trace, llre.
WeightScheme parse_weight_scheme(const std::string& name);
std::string to_string(WeightScheme scheme);
SumAggregator parse_sum_aggregator(const std::string& name);
std::string to_string(SumAggregator agg);
LlreAggregator parse_llre_aggregator(const std::string& name);
std::string to_string(LlreAggregator agg);

std::vector<WeightScheme> all_weight_schemes();

struct WeightSchemeConfig {
  WeightScheme scheme = WeightScheme::binary;
  double mu = 1.0;  // scale of the exponential weight map
  LlreAggregator llre_aggregator = LlreAggregator::seed;
  SumAggregator sum_aggregator = SumAggregator::sum;
};

/// Sum (or mean, dividing by C(k,2)) of the pairwise squared Euclidean
/// distances over all vertex pairs of e.
double pairwise_distance_sum(const SampleMatrix& x, const Hyperedge& e, SumAggregator agg);

/// Sum of squared distances between the seed point and each other member.
double centroid_distance_sum(const SampleMatrix& x, const Hyperedge& e);

/// Trace of the scatter matrix: total squared deviation of the members from
/// their centroid. Computed directly, without the d x d matrix.
double scatter_trace(const SampleMatrix& x, const Hyperedge& e);

/// Leave-one-out linear reconstruction error. Each evaluated vertex is
/// rebuilt by minimum-norm least squares from the other members; the
/// relative residuals are combined per the aggregator (seed uses only the
/// seed vertex's residual).
double reconstruction_error(const SampleMatrix& x, const Hyperedge& e, LlreAggregator agg);

/// Simplex volume from vertex coordinates (rows of `points`), using the
/// determinant of the Gram matrix of edge vectors from the first vertex.
/// Returns nullopt when the simplex degree k = rows-1 exceeds the dimension,
/// where the volume degenerates. Log-domain determinant, so large degrees do
/// not overflow.
std::optional<double> simplex_volume_gram(const Eigen::MatrixXd& points);

/// Simplex volume from the squared pairwise distances of its k+1 vertices
/// via the bordered (Cayley-Menger) determinant.
double simplex_volume_cayley_menger(const Eigen::MatrixXd& d2, int k);

/// Simplex volume from hyperface coefficients: row i of `a` holds
/// (a_i0, ..., a_ik) of the face equation a_i0 + a_i1 v_1 + ... + a_ik v_k = 0.
/// Vol = |det A|^k / (k! * prod_i det(A_i0)), absolute value of the final
/// quotient. Throws NumericalError when any cofactor vanishes.
double simplex_volume_hyperface(const Eigen::MatrixXd& a, int k);

/// Face-coefficient matrix of a full-dimensional simplex in R^k: row i is
/// the hyperplane through every vertex except i, coefficients unit-norm with
/// a deterministic sign.
Eigen::MatrixXd fit_hyperfaces(const Eigen::MatrixXd& points);

/// Coordinates of k+1 points of R^d in an orthonormal basis of their affine
/// hull (first vertex at the origin). Volume-preserving; nullopt when the
/// points are affinely degenerate.
std::optional<Eigen::MatrixXd> affine_hull_coordinates(const Eigen::MatrixXd& points);

/// Mean-normalized exponential scaling: w_i = exp(-(raw_i / mean(raw)) / mu).
/// All-zero raw values map to all-one weights.
std::vector<double> finalize_weights(const std::vector<double>& raw, double mu);

std::vector<double> binary_weights(const Hypergraph& g);

struct WeightComputation {
  std::vector<double> raw;      // per-hyperedge dissimilarity (empty for binary)
  std::vector<double> weights;  // final weights in (0, 1]
  int degenerate_volumes = 0;   // simplices whose degree exceeded the dimension
};

/// Raw dissimilarity per hyperedge under the configured scheme, then the
/// exponential scaling. Binary bypasses the scaling and returns unit weights.
WeightComputation compute_weights(const SampleMatrix& x, const Hypergraph& g,
                                  const WeightSchemeConfig& cfg);

/// Copy of g with the weights replaced.
Hypergraph with_weights(Hypergraph g, std::vector<double> weights);

}  // namespace hyperlap
