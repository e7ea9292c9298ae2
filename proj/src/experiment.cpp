#include "hyperlap/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "hyperlap/errors.hpp"
#include "hyperlap/learn.hpp"
#include "hyperlap/rng.hpp"

namespace hyperlap {

Task parse_task(const std::string& name) {
  if (name == "cluster") return Task::cluster;
  if (name == "classify") return Task::classify;
  throw ConfigError("unknown task '" + name + "' (expected cluster or classify)");
}

std::string to_string(Task task) { return task == Task::cluster ? "cluster" : "classify"; }

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, sep)) parts.push_back(tok);
  return parts;
}

int parse_int(const std::string& value, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from '" + value + "'");
  }
}

double parse_double(const std::string& value, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from '" + value + "'");
  }
}

std::vector<int> parse_k_list(const std::string& value) {
  std::vector<int> out;
  for (const std::string& tok : split(value, ',')) {
    out.push_back(parse_int(trim(tok), "k"));
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_seconds(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

std::string join_k_list(const std::vector<int>& k_list) {
  std::string out;
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (i > 0) out += '|';
    out += std::to_string(k_list[i]);
  }
  return out;
}

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "dataset_path") {
      cfg.dataset_path = value;
    } else if (key == "labels_path") {
      cfg.labels_path = value;
    } else if (key == "task") {
      cfg.task = parse_task(value);
    } else if (key == "scheme") {
      cfg.scheme = parse_weight_scheme(value);
    } else if (key == "framework") {
      cfg.framework = parse_framework(value);
    } else if (key == "k_list") {
      cfg.k_list = parse_k_list(value);
    } else if (key == "mu") {
      cfg.mu = parse_double(value, "mu");
    } else if (key == "lambda") {
      cfg.lambda = parse_double(value, "lambda");
    } else if (key == "llre_aggregator") {
      cfg.llre_aggregator = parse_llre_aggregator(value);
    } else if (key == "sum_aggregator") {
      cfg.sum_aggregator = parse_sum_aggregator(value);
    } else if (key == "folds") {
      cfg.folds = parse_int(value, "folds");
    } else if (key == "seed") {
      try {
        cfg.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw ConfigError("cannot parse seed from '" + value + "'");
      }
    } else if (key == "restarts") {
      cfg.restarts = parse_int(value, "restarts");
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else {
      throw ConfigError("unknown config key '" + key + "' on line " + std::to_string(line_no));
    }
  }
  return cfg;
}

void check_config(const ExperimentConfig& cfg) {
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) throw ConfigError("mu must be positive");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
    throw ConfigError("lambda must be positive");
  }
  if (cfg.folds < 2) throw ConfigError("folds must be at least 2");
  if (cfg.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (cfg.k_list.empty()) throw ConfigError("k_list must not be empty");
  for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
    if (cfg.k_list[i] < 1) throw ConfigError("k values must be positive");
    if (i > 0 && cfg.k_list[i] <= cfg.k_list[i - 1]) {
      throw ConfigError("k_list must be strictly increasing");
    }
  }
}

Dataset load_dataset(const std::string& path, const std::string& labels_path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = trim(cells[c]);
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw DataError("dataset '" + path + "': non-numeric cell at row " +
                        std::to_string(line_no) + ", column " + std::to_string(c + 1));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("dataset '" + path + "': row " + std::to_string(line_no) + " has " +
                      std::to_string(row.size()) + " columns, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("dataset '" + path + "' is empty");

  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }

  std::ifstream lin(labels_path);
  if (!lin) throw DataError("cannot open labels file '" + labels_path + "'");
  std::vector<int> raw_labels;
  line_no = 0;
  while (std::getline(lin, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    try {
      std::size_t pos = 0;
      raw_labels.push_back(std::stoi(line, &pos));
      if (pos != line.size()) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw DataError("labels '" + labels_path + "': non-integer value on line " +
                      std::to_string(line_no));
    }
  }
  if (raw_labels.size() != rows.size()) {
    throw DataError("labels '" + labels_path + "' has " + std::to_string(raw_labels.size()) +
                    " entries but the dataset has " + std::to_string(rows.size()) + " samples");
  }

  std::map<int, int> remap;
  for (int v : raw_labels) remap.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : remap) id = next++;
  data.labels.resize(raw_labels.size());
  for (std::size_t i = 0; i < raw_labels.size(); ++i) data.labels[i] = remap[raw_labels[i]];
  data.num_classes = next;

  check_samples(data.features);
  return data;
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be at least 2");
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(static_cast<int>(i));
  }

  Rng rng(derive_seed(seed, 0x5701D));
  std::vector<int> fold_of(labels.size(), 0);
  for (auto& [cls, indices] : by_class) {
    if (static_cast<int>(indices.size()) < folds) {
      throw ConfigError("stratification error: class " + std::to_string(cls) + " has " +
                        std::to_string(indices.size()) + " samples, fewer than " +
                        std::to_string(folds) + " folds");
    }
    rng.shuffle(indices);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      fold_of[static_cast<std::size_t>(indices[i])] = static_cast<int>(i) % folds;
    }
  }
  return fold_of;
}

namespace {

LaplacianMatrix build_pipeline_laplacian(const ExperimentConfig& cfg, const Dataset& data,
                                         bool warn_degenerate) {
  const Hypergraph raw = multi_k_hyperedges(data.features, NeighborhoodSpec{cfg.k_list});
  WeightSchemeConfig wcfg;
  wcfg.scheme = cfg.scheme;
  wcfg.mu = cfg.mu;
  wcfg.llre_aggregator = cfg.llre_aggregator;
  wcfg.sum_aggregator = cfg.sum_aggregator;
  const WeightComputation weights = compute_weights(data.features, raw, wcfg);
  if (warn_degenerate && weights.degenerate_volumes > 0) {
    std::cerr << "warning: " << weights.degenerate_volumes << " of " << raw.num_edges()
              << " hyperedge simplices exceed the feature dimension; their volumes degenerate"
                 " to 0 (scheme " << to_string(cfg.scheme) << ")\n";
  }
  return build_laplacian(with_weights(raw, weights.weights), cfg.framework);
}

ResultRow base_row(const ExperimentConfig& cfg) {
  ResultRow row;
  row.dataset = cfg.dataset_path;
  row.scheme = to_string(cfg.scheme);
  row.framework = to_string(cfg.framework);
  row.k_list = join_k_list(cfg.k_list);
  row.mu = cfg.mu;
  return row;
}

}  // namespace

std::vector<ResultRow> run_classification(const ExperimentConfig& cfg, const Dataset& data) {
  check_config(cfg);
  const std::vector<int> fold_of = stratified_folds(data.labels, cfg.folds, cfg.seed);

  std::vector<ResultRow> rows;
  for (int fold = 0; fold < cfg.folds; ++fold) {
    const StopWatch watch;
    const LaplacianMatrix laplacian = build_pipeline_laplacian(cfg, data, fold == 0);

    std::vector<int> train_labels(data.labels.size(), -1);
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      if (fold_of[i] != fold) train_labels[i] = data.labels[i];
    }
    const Eigen::MatrixXd y = build_label_matrix(train_labels, data.num_classes);
    const ClassifyResult result = classify(laplacian, y, cfg.lambda);

    long long wrong = 0, total = 0;
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      if (fold_of[i] != fold) continue;
      ++total;
      if (result.labels[i] != data.labels[i]) ++wrong;
    }

    ResultRow row = base_row(cfg);
    row.fold = fold;
    row.metric = "error_rate";
    row.value = total > 0 ? static_cast<double>(wrong) / static_cast<double>(total) : 0.0;
    row.seconds = round_ms(watch.seconds());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> run_clustering(const ExperimentConfig& cfg, const Dataset& data) {
  check_config(cfg);
  const StopWatch watch;
  const LaplacianMatrix laplacian = build_pipeline_laplacian(cfg, data, true);
  const std::vector<int> predicted =
      cluster(laplacian, data.num_classes, cfg.seed, cfg.restarts);
  const double seconds = round_ms(watch.seconds());

  std::vector<ResultRow> rows;
  ResultRow acc = base_row(cfg);
  acc.metric = "accuracy";
  acc.value = accuracy(predicted, data.labels);
  acc.seconds = seconds;
  rows.push_back(std::move(acc));

  ResultRow mutual = base_row(cfg);
  mutual.metric = "nmi";
  mutual.value = nmi(predicted, data.labels);
  mutual.seconds = seconds;
  rows.push_back(std::move(mutual));
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const Dataset& data) {
  return cfg.task == Task::classify ? run_classification(cfg, data) : run_clustering(cfg, data);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, load_dataset(cfg.dataset_path, cfg.labels_path));
}

SweepResult sweep_mu(const ExperimentConfig& cfg, const Dataset& data,
                     std::vector<double> mu_values) {
  if (mu_values.empty()) throw ConfigError("mu sweep needs at least one value");
  std::sort(mu_values.begin(), mu_values.end());

  SweepResult sweep;
  double best_score = -std::numeric_limits<double>::infinity();
  for (double mu : mu_values) {
    ExperimentConfig point = cfg;
    point.mu = mu;
    const std::vector<ResultRow> rows = run_experiment(point, data);

    double score = 0.0;
    if (cfg.task == Task::cluster) {
      // combined clustering metric: mean of accuracy and nmi
      double total = 0.0;
      for (const ResultRow& row : rows) total += row.value;
      score = total / static_cast<double>(rows.size());
    } else {
      double total = 0.0;
      for (const ResultRow& row : rows) total += row.value;
      score = -total / static_cast<double>(rows.size());  // lower error is better
    }
    if (score > best_score) {  // strict: ties keep the smaller mu
      best_score = score;
      sweep.best_mu = mu;
    }
    sweep.rows.insert(sweep.rows.end(), rows.begin(), rows.end());
  }
  return sweep;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& output_path) {
  std::vector<ResultRow> sorted = rows;
  std::stable_sort(sorted.begin(), sorted.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.scheme, a.framework, a.mu, a.fold, a.metric) <
           std::tie(b.scheme, b.framework, b.mu, b.fold, b.metric);
  });

  std::ofstream out(output_path);
  if (!out) throw DataError("cannot open '" + output_path + "' for writing");
  out << "dataset,scheme,framework,k_list,mu,fold,metric,value,seconds\n";
  for (const ResultRow& row : sorted) {
    out << row.dataset << ',' << row.scheme << ',' << row.framework << ',' << row.k_list << ','
        << format_double(row.mu) << ',' << row.fold << ',' << row.metric << ','
        << format_double(row.value) << ',' << format_seconds(row.seconds) << "\n";
  }
  if (!out) throw DataError("write failed for '" + output_path + "'");
  out.close();

  // companion pivot: mean metric value per (scheme, framework)
  std::string plot_path = output_path;
  const std::string suffix = ".csv";
  if (plot_path.size() >= suffix.size() &&
      plot_path.compare(plot_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    plot_path.replace(plot_path.size() - suffix.size(), suffix.size(), ".plot.csv");
  } else {
    plot_path += ".plot.csv";
  }

  std::set<std::string> metrics, schemes;
  std::map<std::string, std::pair<double, int>> sums;  // metric|scheme|framework -> (sum, count)
  std::set<std::string> present_frameworks;
  for (const ResultRow& row : sorted) {
    metrics.insert(row.metric);
    schemes.insert(row.scheme);
    present_frameworks.insert(row.framework);
    auto& cell = sums[row.metric + '|' + row.scheme + '|' + row.framework];
    cell.first += row.value;
    ++cell.second;
  }
  std::vector<std::string> frameworks;
  for (const char* name : {"zhou", "clique", "star"}) {
    if (present_frameworks.count(name) > 0) frameworks.emplace_back(name);
  }

  std::ofstream plot(plot_path);
  if (!plot) throw DataError("cannot open '" + plot_path + "' for writing");
  plot << "metric,scheme";
  for (const std::string& f : frameworks) plot << ',' << f;
  plot << "\n";
  for (const std::string& metric : metrics) {
    for (const std::string& scheme : schemes) {
      plot << metric << ',' << scheme;
      for (const std::string& framework : frameworks) {
        plot << ',';
        const auto it = sums.find(metric + '|' + scheme + '|' + framework);
        if (it != sums.end() && it->second.second > 0) {
          plot << format_double(it->second.first / it->second.second);
        }
      }
      plot << "\n";
    }
  }
  if (!plot) throw DataError("write failed for '" + plot_path + "'");
}

MetricSummary summarize_metric(const std::vector<ResultRow>& rows, const std::string& scheme,
                               const std::string& framework, const std::string& metric) {
  MetricSummary summary;
  double sum = 0.0;
  std::vector<double> values;
  for (const ResultRow& row : rows) {
    if (row.scheme == scheme && row.framework == framework && row.metric == metric) {
      values.push_back(row.value);
      sum += row.value;
    }
  }
  summary.count = static_cast<int>(values.size());
  if (values.empty()) return summary;
  summary.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - summary.mean) * (v - summary.mean);
    summary.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return summary;
}

}  // namespace hyperlap
