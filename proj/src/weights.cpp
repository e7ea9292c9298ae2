#include "hyperlap/weights.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyperlap/errors.hpp"
#include "hyperlap/numkernels.hpp"

namespace hyperlap {

WeightScheme parse_weight_scheme(const std::string& name) {
  if (name == "binary") return WeightScheme::binary;
  if (name == "sum") return WeightScheme::sum;
  if (name == "centroid") return WeightScheme::centroid;
  if (name == "volume-gram") return WeightScheme::volume_gram;
  if (name == "volume-cm") return WeightScheme::volume_cayley_menger;
  if (name == "volume-face") return WeightScheme::volume_hyperface;
  if (name == "trace") return WeightScheme::trace;
  if (name == "llre") return WeightScheme::llre;
  throw ConfigError("unknown weight scheme '" + name +
                    "' (expected binary, sum, centroid, volume-gram, volume-cm, "
                    "volume-face, trace or llre)");
}

std::string to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::binary: return "binary";
    case WeightScheme::sum: return "sum";
    case WeightScheme::centroid: return "centroid";
    case WeightScheme::volume_gram: return "volume-gram";
    case WeightScheme::volume_cayley_menger: return "volume-cm";
    case WeightScheme::volume_hyperface: return "volume-face";
    case WeightScheme::trace: return "trace";
    case WeightScheme::llre: return "llre";
  }
  return "?";
}

SumAggregator parse_sum_aggregator(const std::string& name) {
  if (name == "sum") return SumAggregator::sum;
  if (name == "mean") return SumAggregator::mean;
  throw ConfigError("unknown sum aggregator '" + name + "' (expected sum or mean)");
}

std::string to_string(SumAggregator agg) {
  return agg == SumAggregator::sum ? "sum" : "mean";
}

LlreAggregator parse_llre_aggregator(const std::string& name) {
  if (name == "seed") return LlreAggregator::seed;
  if (name == "mean") return LlreAggregator::mean;
  if (name == "min") return LlreAggregator::min;
  if (name == "max") return LlreAggregator::max;
  throw ConfigError("unknown llre aggregator '" + name + "' (expected seed, mean, min or max)");
}

std::string to_string(LlreAggregator agg) {
  switch (agg) {
    case LlreAggregator::seed: return "seed";
    case LlreAggregator::mean: return "mean";
    case LlreAggregator::min: return "min";
    case LlreAggregator::max: return "max";
  }
  return "?";
}

std::vector<WeightScheme> all_weight_schemes() {
  return {WeightScheme::binary,       WeightScheme::sum,
          WeightScheme::centroid,     WeightScheme::volume_gram,
          WeightScheme::volume_cayley_menger, WeightScheme::volume_hyperface,
          WeightScheme::trace,        WeightScheme::llre};
}

namespace {

void check_edge_against_samples(const SampleMatrix& x, const Hyperedge& e) {
  if (e.degree() < 2) throw DataError("hyperedge needs at least 2 vertices");
  for (int v : e.vertices) {
    if (v < 0 || v >= x.rows()) {
      throw DataError("hyperedge vertex " + std::to_string(v) + " out of range for " +
                      std::to_string(x.rows()) + " samples");
    }
  }
}

Eigen::MatrixXd gather_rows(const SampleMatrix& x, const Hyperedge& e) {
  Eigen::MatrixXd points(e.degree(), x.cols());
  for (int i = 0; i < e.degree(); ++i) {
    points.row(i) = x.row(e.vertices[static_cast<std::size_t>(i)]);
  }
  return points;
}

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

double pairwise_distance_sum(const SampleMatrix& x, const Hyperedge& e, SumAggregator agg) {
  check_edge_against_samples(x, e);
  const int m = e.degree();
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      total += (x.row(e.vertices[static_cast<std::size_t>(i)]) -
                x.row(e.vertices[static_cast<std::size_t>(j)]))
                   .squaredNorm();
    }
  }
  if (agg == SumAggregator::mean) {
    total /= static_cast<double>(m) * (m - 1) / 2.0;
  }
  return total;
}

double centroid_distance_sum(const SampleMatrix& x, const Hyperedge& e) {
  check_edge_against_samples(x, e);
  if (!e.has_seed()) {
    throw ConfigError("centroid weight needs a seed vertex on every hyperedge");
  }
  double total = 0.0;
  for (int v : e.vertices) {
    if (v == e.seed) continue;
    total += (x.row(e.seed) - x.row(v)).squaredNorm();
  }
  return total;
}

double scatter_trace(const SampleMatrix& x, const Hyperedge& e) {
  check_edge_against_samples(x, e);
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
  for (int v : e.vertices) mean += x.row(v);
  mean /= static_cast<double>(e.degree());
  double total = 0.0;
  for (int v : e.vertices) total += (x.row(v) - mean).squaredNorm();
  return total;
}

double reconstruction_error(const SampleMatrix& x, const Hyperedge& e, LlreAggregator agg) {
  check_edge_against_samples(x, e);
  std::vector<int> evaluated;
  if (agg == LlreAggregator::seed) {
    if (!e.has_seed()) {
      throw ConfigError("llre seed aggregator needs a seed vertex on every hyperedge");
    }
    evaluated.push_back(e.seed);
  } else {
    evaluated = e.vertices;
  }

  std::vector<double> residuals;
  residuals.reserve(evaluated.size());
  for (int target : evaluated) {
    const Eigen::VectorXd b = x.row(target).transpose();
    const double b_norm2 = b.squaredNorm();
    if (b_norm2 == 0.0) {
      throw NumericalError("llre: sample " + std::to_string(target) +
                           " has zero norm, relative residual undefined");
    }
    Eigen::MatrixXd others(x.cols(), e.degree() - 1);
    int col = 0;
    for (int v : e.vertices) {
      if (v == target) continue;
      others.col(col++) = x.row(v).transpose();
    }
    const Eigen::VectorXd c = min_norm_least_squares(others, b);
    residuals.push_back((b - others * c).squaredNorm() / b_norm2);
  }

  switch (agg) {
    case LlreAggregator::seed: return residuals.front();
    case LlreAggregator::mean:
      return std::accumulate(residuals.begin(), residuals.end(), 0.0) /
             static_cast<double>(residuals.size());
    case LlreAggregator::min: return *std::min_element(residuals.begin(), residuals.end());
    case LlreAggregator::max: return *std::max_element(residuals.begin(), residuals.end());
  }
  return residuals.front();
}

std::optional<double> simplex_volume_gram(const Eigen::MatrixXd& points) {
  const int k = static_cast<int>(points.rows()) - 1;
  if (k < 1) throw DataError("simplex needs at least 2 vertices");
  if (k > points.cols()) return std::nullopt;  // degenerate: degree above dimension

  Eigen::MatrixXd edges(points.cols(), k);
  for (int i = 1; i <= k; ++i) {
    edges.col(i - 1) = (points.row(0) - points.row(i)).transpose();
  }
  const LogDet det = log_abs_det(edges.transpose() * edges);
  if (det.sign == 0) return 0.0;
  return std::exp(0.5 * det.log_abs - log_factorial(k));
}

double simplex_volume_cayley_menger(const Eigen::MatrixXd& d2, int k) {
  if (k < 1) throw DataError("simplex degree must be at least 1");
  if (d2.rows() != k + 1 || d2.cols() != k + 1) {
    throw DataError("squared-distance matrix must be (k+1) x (k+1)");
  }
  const double scale = std::max(1.0, d2.cwiseAbs().maxCoeff());
  if ((d2 - d2.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DataError("squared-distance matrix is not symmetric");
  }
  if (d2.minCoeff() < 0.0) throw DataError("squared-distance matrix has a negative entry");
  if (d2.diagonal().cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DataError("squared-distance matrix has a nonzero diagonal");
  }

  // bordered matrix: zero corner, ones border, squared distances inside
  Eigen::MatrixXd p = Eigen::MatrixXd::Ones(k + 2, k + 2);
  p(0, 0) = 0.0;
  p.block(1, 1, k + 1, k + 1) = d2;
  const LogDet det = log_abs_det(p);
  if (det.sign == 0) return 0.0;
  return std::exp(0.5 * det.log_abs - 0.5 * k * std::log(2.0) - log_factorial(k));
}

double simplex_volume_hyperface(const Eigen::MatrixXd& a, int k) {
  if (k < 1) throw DataError("simplex degree must be at least 1");
  if (a.rows() != k + 1 || a.cols() != k + 1) {
    throw DataError("hyperface coefficient matrix must be (k+1) x (k+1)");
  }

  double log_cofactors = 0.0;
  for (int i = 0; i <= k; ++i) {
    // minor of entry (i, 0); its sign cancels in the final absolute value
    Eigen::MatrixXd minor(k, k);
    int row = 0;
    for (int r = 0; r <= k; ++r) {
      if (r == i) continue;
      minor.row(row++) = a.row(r).tail(k);
    }
    const LogDet det = log_abs_det(minor);
    if (det.sign == 0) {
      throw NumericalError("hyperface volume: cofactor " + std::to_string(i) +
                           " vanishes (parallel or degenerate faces)");
    }
    log_cofactors += det.log_abs;
  }

  const LogDet det_a = log_abs_det(a);
  if (det_a.sign == 0) return 0.0;
  return std::exp(k * det_a.log_abs - log_factorial(k) - log_cofactors);
}

Eigen::MatrixXd fit_hyperfaces(const Eigen::MatrixXd& points) {
  const int k = static_cast<int>(points.rows()) - 1;
  if (k < 1 || points.cols() != k) {
    throw DataError("fit_hyperfaces expects k+1 points in R^k");
  }

  Eigen::MatrixXd a(k + 1, k + 1);
  for (int i = 0; i <= k; ++i) {
    // face i passes through every vertex except i: nullspace of [1 | v_j]
    Eigen::MatrixXd m(k, k + 1);
    int row = 0;
    for (int j = 0; j <= k; ++j) {
      if (j == i) continue;
      m(row, 0) = 1.0;
      m.row(row).tail(k) = points.row(j);
      ++row;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd coeff = svd.matrixV().col(k);

    Eigen::Index pivot = 0;
    coeff.cwiseAbs().maxCoeff(&pivot);
    if (coeff(pivot) < 0.0) coeff = -coeff;
    a.row(i) = coeff.transpose();
  }
  return a;
}

std::optional<Eigen::MatrixXd> affine_hull_coordinates(const Eigen::MatrixXd& points) {
  const int k = static_cast<int>(points.rows()) - 1;
  if (k < 1) throw DataError("simplex needs at least 2 vertices");
  if (k > points.cols()) return std::nullopt;

  Eigen::MatrixXd edges(points.cols(), k);
  for (int i = 1; i <= k; ++i) {
    edges.col(i - 1) = (points.row(i) - points.row(0)).transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(edges);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) return std::nullopt;

  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(points.cols(), k);
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(k + 1, k);
  coords.bottomRows(k) = (q.transpose() * edges).transpose();
  return coords;
}

std::vector<double> finalize_weights(const std::vector<double>& raw, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ConfigError("mu must be a positive finite number");
  }
  if (raw.empty()) return {};
  const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) /
                      static_cast<double>(raw.size());
  std::vector<double> weights(raw.size(), 1.0);
  if (mean == 0.0) return weights;  // all-zero dissimilarities: uniform weights
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // floor at the smallest normal double: exp underflows to 0 around -745,
    // and weights must stay strictly positive
    weights[i] = std::max(std::exp(-(raw[i] / mean) / mu),
                          std::numeric_limits<double>::min());
  }
  return weights;
}

std::vector<double> binary_weights(const Hypergraph& g) {
  return std::vector<double>(static_cast<std::size_t>(g.num_edges()), 1.0);
}

namespace {

// Hyperface-based volume for a hyperedge's points: project onto the affine
// hull, fit the face hyperplanes, then apply the determinant formula.
// Degenerate point sets get volume 0.
double hyperface_volume_from_points(const Eigen::MatrixXd& points, int* degenerate) {
  const int k = static_cast<int>(points.rows()) - 1;
  const auto coords = affine_hull_coordinates(points);
  if (!coords.has_value()) {
    if (k > points.cols() && degenerate != nullptr) ++*degenerate;
    return 0.0;
  }
  try {
    return simplex_volume_hyperface(fit_hyperfaces(*coords), k);
  } catch (const NumericalError&) {
    return 0.0;  // nearly-coincident points: treat as a collapsed simplex
  }
}

}  // namespace

WeightComputation compute_weights(const SampleMatrix& x, const Hypergraph& g,
                                  const WeightSchemeConfig& cfg) {
  require_valid(g);
  check_samples(x);
  if (g.num_vertices != x.rows()) {
    throw DataError("hypergraph has " + std::to_string(g.num_vertices) +
                    " vertices but the sample matrix has " + std::to_string(x.rows()) +
                    " rows");
  }
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) {
    throw ConfigError("mu must be a positive finite number");
  }

  WeightComputation out;
  if (cfg.scheme == WeightScheme::binary) {
    out.weights = binary_weights(g);
    return out;
  }

  out.raw.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Hyperedge& e : g.edges) {
    double raw = 0.0;
    switch (cfg.scheme) {
      case WeightScheme::sum:
        raw = pairwise_distance_sum(x, e, cfg.sum_aggregator);
        break;
      case WeightScheme::centroid:
        raw = centroid_distance_sum(x, e);
        break;
      case WeightScheme::trace:
        raw = scatter_trace(x, e);
        break;
      case WeightScheme::llre:
        raw = reconstruction_error(x, e, cfg.llre_aggregator);
        break;
      case WeightScheme::volume_gram: {
        const auto vol = simplex_volume_gram(gather_rows(x, e));
        if (vol.has_value()) {
          raw = *vol;
        } else {
          ++out.degenerate_volumes;
        }
        break;
      }
      case WeightScheme::volume_cayley_menger: {
        const int k = e.degree() - 1;
        if (k > x.cols()) {
          ++out.degenerate_volumes;
        } else {
          raw = simplex_volume_cayley_menger(pairwise_sq_distances(x, e), k);
        }
        break;
      }
      case WeightScheme::volume_hyperface:
        raw = hyperface_volume_from_points(gather_rows(x, e), &out.degenerate_volumes);
        break;
      case WeightScheme::binary:
        break;
    }
    out.raw.push_back(raw);
  }
  out.weights = finalize_weights(out.raw, cfg.mu);
  return out;
}

Hypergraph with_weights(Hypergraph g, std::vector<double> weights) {
  if (weights.size() != g.edges.size()) {
    throw DataError("weight count does not match hyperedge count");
  }
  g.weights = std::move(weights);
  return g;
}

}  // namespace hyperlap
