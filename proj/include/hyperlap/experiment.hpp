#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlap/hyperedge_gen.hpp"
#include "hyperlap/laplacian.hpp"
#include "hyperlap/weights.hpp"

namespace hyperlap {

enum class Task { cluster, classify };
Task parse_task(const std::string& name);
std::string to_string(Task task);

struct ExperimentConfig {
  std::string dataset_path;
  std::string labels_path;
  Task task = Task::cluster;
  WeightScheme scheme = WeightScheme::binary;
  Framework framework = Framework::zhou;
  std::vector<int> k_list = {5};
  double mu = 1.0;
  double lambda = 1.0;
  LlreAggregator llre_aggregator = LlreAggregator::seed;
  SumAggregator sum_aggregator = SumAggregator::sum;
  int folds = 2;
  std::uint64_t seed = 42;
  int restarts = 10;
  std::string output_path = "results.csv";
};

/// Parses a `key = value` config file with '#' comments. Keys match the
/// ExperimentConfig field names; unknown keys are an error.
ExperimentConfig load_config(const std::string& path);

/// Quick sanity checks that need no dataset: positive mu/lambda, folds >= 2,
/// restarts >= 1, non-empty strictly-increasing k_list.
void check_config(const ExperimentConfig& cfg);

struct Dataset {
  SampleMatrix features;
  std::vector<int> labels;  // remapped to 0..num_classes-1
  int num_classes = 0;
};

/// Features: comma-separated values, one sample per row, no header.
/// Labels: one integer per line. Label values are compacted to 0..c-1 in
/// ascending order of the original ids.
Dataset load_dataset(const std::string& path, const std::string& labels_path);

struct ResultRow {
  std::string dataset;
  std::string scheme;
  std::string framework;
  std::string k_list;  // joined with '|'
  double mu = 0.0;
  int fold = 0;
  std::string metric;  // error_rate | accuracy | nmi
  double value = 0.0;
  double seconds = 0.0;
};

/// Stratified fold ids (0..folds-1) per sample: indices of each class are
/// shuffled with a seed-derived stream and dealt round-robin, so fold class
/// proportions differ by at most one sample. Throws ConfigError when a class
/// has fewer samples than folds.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed);

/// f-fold cross-validated transduction: per fold, training labels are seeded
/// into the label matrix, test labels zeroed, and the pipeline
/// (multi-k hyperedges -> scheme weights -> framework Laplacian -> solve)
/// reports the test error rate.
std::vector<ResultRow> run_classification(const ExperimentConfig& cfg, const Dataset& data);

/// Full-dataset pipeline ending in spectral k-means; reports accuracy and nmi
/// against the dataset labels.
std::vector<ResultRow> run_clustering(const ExperimentConfig& cfg, const Dataset& data);

/// Dispatch on cfg.task.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const Dataset& data);
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

struct SweepResult {
  std::vector<ResultRow> rows;
  double best_mu = 0.0;  // clustering: max mean(accuracy, nmi); classification:
                         // min mean error. Ties go to the smaller mu.
};

SweepResult sweep_mu(const ExperimentConfig& cfg, const Dataset& data,
                     std::vector<double> mu_values);

/// Writes the result CSV (header dataset,scheme,framework,k_list,mu,fold,
/// metric,value,seconds; rows sorted by scheme, framework, mu, fold, metric)
/// plus a companion .plot.csv pivot of the mean metric per scheme/framework.
void emit_results(const std::vector<ResultRow>& rows, const std::string& output_path);

/// Mean and sample standard deviation of the `metric` rows (over folds).
struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};
MetricSummary summarize_metric(const std::vector<ResultRow>& rows, const std::string& scheme,
                               const std::string& framework, const std::string& metric);

}  // namespace hyperlap
