#include "hyperlap/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hyperlap/errors.hpp"
#include "hyperlap/numkernels.hpp"
#include "hyperlap/rng.hpp"

namespace hyperlap {

namespace {

constexpr int kMaxKmeansIterations = 300;
constexpr double kInertiaTolerance = 1e-6;

}  // namespace

Embedding spectral_embed(const LaplacianMatrix& l, int m) {
  const int n = l.size();
  if (m < 1) throw ConfigError("embedding dimension must be positive");
  if (m >= n) {
    throw ConfigError("embedding dimension " + std::to_string(m) +
                      " must be smaller than the vertex count " + std::to_string(n));
  }
  const EigenResult eig = symmetric_eigen(l.matrix, n);
  const int zeros = count_zero_eigenvalues(eig.eigenvalues);
  const int available = n - zeros;
  if (m > available) {
    throw NumericalError("spectral embedding: requested " + std::to_string(m) +
                         " nonzero eigenvectors but only " + std::to_string(available) +
                         " exist (" + std::to_string(zeros) + " connected components)");
  }
  return {eig.eigenvectors.middleCols(zeros, m)};
}

namespace {

double kmeans_inertia(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                      const std::vector<int>& assignment) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    total += (points.row(i) - centers.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

void assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                    std::vector<int>& assignment) {
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      const double d = (points.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    assignment[static_cast<std::size_t>(i)] = best;
  }
}

Eigen::MatrixXd kmeans_pp_init(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  centers.row(0) = points.row(rng.next_int(static_cast<int>(n)));

  Eigen::VectorXd dist2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist2.sum();
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      const double target = rng.next_double() * total;
      double cumulative = 0.0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += dist2(i);
        if (cumulative >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = rng.next_int(static_cast<int>(n));  // all points already covered
    }
    centers.row(c) = points.row(chosen);
    dist2 = dist2.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

std::vector<int> kmeans_single(const Eigen::MatrixXd& points, int k, Rng rng, double* inertia) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centers = kmeans_pp_init(points, k, rng);
  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  assign_nearest(points, centers, assignment);

  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < kMaxKmeansIterations; ++iter) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(assignment[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      } else {
        // revive an empty cluster at the point farthest from its center
        Eigen::Index worst = 0;
        double worst_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d =
              (points.row(i) - centers.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > worst_d) {
            worst_d = d;
            worst = i;
          }
        }
        centers.row(c) = points.row(worst);
        assignment[static_cast<std::size_t>(worst)] = c;
      }
    }

    assign_nearest(points, centers, assignment);
    const double current = kmeans_inertia(points, centers, assignment);
    const bool converged =
        std::isfinite(previous) &&
        previous - current <= kInertiaTolerance * std::max(previous, 1e-300);
    previous = current;
    if (converged) break;
  }
  *inertia = previous;
  return assignment;
}

}  // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts) {
  const Eigen::Index n = points.rows();
  if (k < 1) throw ConfigError("k-means needs at least one cluster");
  if (k > n) {
    throw ConfigError("k-means: k=" + std::to_string(k) + " exceeds the point count " +
                      std::to_string(n));
  }
  if (restarts < 1) throw ConfigError("k-means needs at least one restart");

  std::vector<int> best;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    double inertia = 0.0;
    std::vector<int> assignment = kmeans_single(points, k, Rng(derive_seed(seed, r)), &inertia);
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best = std::move(assignment);
    }
  }
  return best;
}

std::vector<int> cluster(const LaplacianMatrix& l, int num_classes, std::uint64_t seed,
                         int restarts) {
  const int n = l.size();
  if (num_classes < 1) throw ConfigError("cluster count must be positive");
  if (num_classes > n) {
    throw ConfigError("cluster count " + std::to_string(num_classes) +
                      " exceeds the vertex count " + std::to_string(n));
  }

  const EigenResult eig = symmetric_eigen(l.matrix, n);
  const int zeros = count_zero_eigenvalues(eig.eigenvalues);
  Eigen::MatrixXd coords;
  if (zeros > 1) {
    // Disconnected: the zero eigenspace holds the component indicators, so
    // the m smallest eigenvectors (zeros included) form the embedding. Rows
    // of a component are parallel (scaled by sqrt-degree); normalizing them
    // collapses each component to one point, making the recovery exact.
    coords = eig.eigenvectors.leftCols(num_classes);
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      const double norm = coords.row(i).norm();
      if (norm > 0.0) coords.row(i) /= norm;
    }
  } else if (num_classes < n) {
    coords = spectral_embed(l, num_classes).coordinates;
  } else {
    coords = eig.eigenvectors.leftCols(num_classes);  // m == n: nothing to skip
  }
  return kmeans(coords, num_classes, seed, restarts);
}

Eigen::MatrixXd build_label_matrix(const std::vector<int>& labels, int c) {
  if (c < 1) throw ConfigError("class count must be positive");
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), c);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int label = labels[i];
    if (label == -1) continue;
    if (label < 0 || label >= c) {
      throw ConfigError("label " + std::to_string(label) + " of vertex " + std::to_string(i) +
                        " outside [0, " + std::to_string(c) + ")");
    }
    y.row(static_cast<Eigen::Index>(i)).setConstant(-1.0);
    y(static_cast<Eigen::Index>(i), label) = 1.0;
  }
  return y;
}

ClassifyResult classify(const LaplacianMatrix& l, const Eigen::MatrixXd& y, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be a positive finite number");
  }
  if (y.rows() != l.size()) {
    throw ConfigError("label matrix rows do not match the Laplacian dimension");
  }
  if ((y.cwiseAbs().rowwise().sum().array() > 0.0).count() == 0) {
    throw ConfigError("label matrix has no labeled vertex");
  }

  Eigen::MatrixXd system = l.matrix;
  system.diagonal().array() += lambda;
  ClassifyResult result;
  result.scores = solve_spd(system, y);

  result.labels.resize(static_cast<std::size_t>(y.rows()));
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    int best = 0;
    for (Eigen::Index j = 1; j < y.cols(); ++j) {
      if (result.scores(i, j) > result.scores(i, best)) best = static_cast<int>(j);
    }
    result.labels[static_cast<std::size_t>(i)] = best;
  }
  return result;
}

namespace {

// contingency table over compacted label ids
struct Contingency {
  std::vector<std::vector<long long>> counts;  // pred x truth
  std::vector<long long> pred_totals;
  std::vector<long long> truth_totals;
  long long n = 0;
};

std::vector<int> compact_ids(const std::vector<int>& labels) {
  std::map<int, int> remap;
  for (int v : labels) remap.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : remap) id = next++;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = remap[labels[i]];
  return out;
}

Contingency make_contingency(const std::vector<int>& pred, const std::vector<int>& truth) {
  const std::vector<int> p = compact_ids(pred);
  const std::vector<int> t = compact_ids(truth);
  const int np = *std::max_element(p.begin(), p.end()) + 1;
  const int nt = *std::max_element(t.begin(), t.end()) + 1;
  Contingency c;
  c.counts.assign(static_cast<std::size_t>(np), std::vector<long long>(static_cast<std::size_t>(nt), 0));
  c.pred_totals.assign(static_cast<std::size_t>(np), 0);
  c.truth_totals.assign(static_cast<std::size_t>(nt), 0);
  c.n = static_cast<long long>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++c.counts[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(t[i])];
    ++c.pred_totals[static_cast<std::size_t>(p[i])];
    ++c.truth_totals[static_cast<std::size_t>(t[i])];
  }
  return c;
}

// Hungarian algorithm (potentials formulation) on a square cost matrix;
// returns the minimum total cost assignment column -> row in `match`.
long long hungarian_min_cost(const std::vector<std::vector<long long>>& cost) {
  const int n = static_cast<int>(cost.size());
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(static_cast<std::size_t>(n) + 1, 0), v(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<long long> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const int i0 = match[static_cast<std::size_t>(j0)];
      long long delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const long long cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                              u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  long long total = 0;
  for (int j = 1; j <= n; ++j) {
    if (match[static_cast<std::size_t>(j)] != 0) {
      total += cost[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)]
                   [static_cast<std::size_t>(j - 1)];
    }
  }
  return total;
}

void check_same_length(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) {
    throw ConfigError("label lists differ in length: " + std::to_string(pred.size()) + " vs " +
                      std::to_string(truth.size()));
  }
  if (pred.empty()) throw ConfigError("label lists are empty");
}

}  // namespace

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  check_same_length(pred, truth);
  const Contingency c = make_contingency(pred, truth);
  const int side = std::max(c.counts.size(), c.counts.front().size());

  // maximize agreements == minimize negated counts on a zero-padded square
  std::vector<std::vector<long long>> cost(static_cast<std::size_t>(side),
                                           std::vector<long long>(static_cast<std::size_t>(side), 0));
  for (std::size_t i = 0; i < c.counts.size(); ++i) {
    for (std::size_t j = 0; j < c.counts[i].size(); ++j) cost[i][j] = -c.counts[i][j];
  }
  const long long agreements = -hungarian_min_cost(cost);
  return static_cast<double>(agreements) / static_cast<double>(c.n);
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
  check_same_length(pred, truth);
  const Contingency c = make_contingency(pred, truth);
  const double n = static_cast<double>(c.n);

  // equivalent partitions (a bijection between ids) have NMI exactly 1
  bool bijective = c.counts.size() == c.counts.front().size();
  if (bijective) {
    for (const auto& row : c.counts) {
      int nonzero = 0;
      for (long long v : row) nonzero += v > 0 ? 1 : 0;
      if (nonzero != 1) {
        bijective = false;
        break;
      }
    }
    for (std::size_t j = 0; bijective && j < c.counts.front().size(); ++j) {
      int nonzero = 0;
      for (std::size_t i = 0; i < c.counts.size(); ++i) nonzero += c.counts[i][j] > 0 ? 1 : 0;
      if (nonzero != 1) bijective = false;
    }
  }
  if (bijective) return 1.0;

  auto entropy = [n](const std::vector<long long>& totals) {
    double h = 0.0;
    for (long long t : totals) {
      if (t > 0) h += (static_cast<double>(t) / n) * std::log(n / static_cast<double>(t));
    }
    return h;
  };
  const double h_pred = entropy(c.pred_totals);
  const double h_truth = entropy(c.truth_totals);
  if (h_pred == 0.0 || h_truth == 0.0) return 0.0;  // a single cluster on one side only

  double mi = 0.0;
  for (std::size_t i = 0; i < c.counts.size(); ++i) {
    for (std::size_t j = 0; j < c.counts[i].size(); ++j) {
      const long long nij = c.counts[i][j];
      if (nij == 0) continue;
      mi += (static_cast<double>(nij) / n) *
            std::log(static_cast<double>(nij) * n /
                     (static_cast<double>(c.pred_totals[i]) * static_cast<double>(c.truth_totals[j])));
    }
  }
  return std::clamp(mi / std::sqrt(h_pred * h_truth), 0.0, 1.0);
}

}  // namespace hyperlap
