// hyperlap: hypergraph-learning experiment harness.
//
// Subcommands:
//   run       one experiment or a scheme x framework grid, emits result CSVs
//   validate  check a config file and its referenced data files
//   sweep     run the experiment once per mu in a grid, report the best mu

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "hyperlap/errors.hpp"
#include "hyperlap/experiment.hpp"
#include "hyperlap/learn.hpp"

namespace {

using namespace hyperlap;

struct CliOptions {
  std::string config_path;
  std::string task;
  std::string scheme;
  std::string framework;
  std::string k;
  std::string mu_grid;
  double mu = -1.0;
  double lambda = -1.0;
  int folds = -1;
  long long seed = -1;
  int restarts = -1;
  std::string out;
  bool timings = false;
};

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(value);
  while (std::getline(in, tok, ',')) out.push_back(tok);
  return out;
}

ExperimentConfig make_config(const CliOptions& opt) {
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
  if (!opt.task.empty()) cfg.task = parse_task(opt.task);
  if (!opt.k.empty()) {
    cfg.k_list.clear();
    for (const std::string& tok : split_csv(opt.k)) {
      try {
        cfg.k_list.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ConfigError("cannot parse k value '" + tok + "'");
      }
    }
  }
  if (opt.mu > 0.0) cfg.mu = opt.mu;
  if (opt.lambda > 0.0) cfg.lambda = opt.lambda;
  if (opt.folds > 0) cfg.folds = opt.folds;
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.restarts > 0) cfg.restarts = opt.restarts;
  if (!opt.out.empty()) cfg.output_path = opt.out;
  if (cfg.dataset_path.empty() || cfg.labels_path.empty()) {
    throw ConfigError("dataset_path and labels_path must be set in the config file");
  }
  return cfg;
}

std::vector<WeightScheme> expand_schemes(const std::string& option, WeightScheme fallback) {
  if (option.empty()) return {fallback};
  if (option == "all") return all_weight_schemes();
  std::vector<WeightScheme> out;
  for (const std::string& tok : split_csv(option)) out.push_back(parse_weight_scheme(tok));
  return out;
}

std::vector<Framework> expand_frameworks(const std::string& option, Framework fallback) {
  if (option.empty()) return {fallback};
  if (option == "all") return all_frameworks();
  std::vector<Framework> out;
  for (const std::string& tok : split_csv(option)) out.push_back(parse_framework(tok));
  return out;
}

void print_classification_table(const std::vector<ResultRow>& rows,
                                const std::vector<WeightScheme>& schemes,
                                const std::vector<Framework>& frameworks) {
  std::printf("Mean Classification Errors +- Standard deviation (%%)\n");
  std::printf("%-10s", "framework");
  for (WeightScheme s : schemes) std::printf("  %-14s", to_string(s).c_str());
  std::printf("\n");
  for (Framework f : frameworks) {
    std::printf("%-10s", to_string(f).c_str());
    for (WeightScheme s : schemes) {
      const MetricSummary m = summarize_metric(rows, to_string(s), to_string(f), "error_rate");
      char cell[32];
      std::snprintf(cell, sizeof(cell), "%.2f+-%.2f", 100.0 * m.mean, 100.0 * m.stddev);
      std::printf("  %-14s", cell);
    }
    std::printf("\n");
  }
}

void print_clustering_table(const std::vector<ResultRow>& rows,
                            const std::vector<WeightScheme>& schemes,
                            const std::vector<Framework>& frameworks) {
  std::printf("Accuracy (Normalized Mutual Information, %%)\n");
  std::printf("%-10s", "framework");
  for (WeightScheme s : schemes) std::printf("  %-14s", to_string(s).c_str());
  std::printf("\n");
  for (Framework f : frameworks) {
    std::printf("%-10s", to_string(f).c_str());
    for (WeightScheme s : schemes) {
      const MetricSummary acc = summarize_metric(rows, to_string(s), to_string(f), "accuracy");
      const MetricSummary inf = summarize_metric(rows, to_string(s), to_string(f), "nmi");
      char cell[32];
      std::snprintf(cell, sizeof(cell), "%.2f(%.2f)", 100.0 * acc.mean, 100.0 * inf.mean);
      std::printf("  %-14s", cell);
    }
    std::printf("\n");
  }
}

void strip_timings(std::vector<ResultRow>& rows, bool keep) {
  // Measured wall times vary between otherwise identical runs; result files
  // stay byte-reproducible unless the user opts into exact timings.
  if (keep) return;
  for (ResultRow& row : rows) row.seconds = 0.0;
}

int cmd_run(const CliOptions& opt) {
  ExperimentConfig cfg = make_config(opt);
  const std::vector<WeightScheme> schemes = expand_schemes(opt.scheme, cfg.scheme);
  const std::vector<Framework> frameworks = expand_frameworks(opt.framework, cfg.framework);
  const Dataset data = load_dataset(cfg.dataset_path, cfg.labels_path);

  std::vector<ResultRow> rows;
  for (WeightScheme scheme : schemes) {
    for (Framework framework : frameworks) {
      ExperimentConfig cell = cfg;
      cell.scheme = scheme;
      cell.framework = framework;
      const std::vector<ResultRow> cell_rows = run_experiment(cell, data);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
  }

  if (cfg.task == Task::classify) {
    print_classification_table(rows, schemes, frameworks);
  } else {
    print_clustering_table(rows, schemes, frameworks);
  }

  double total_seconds = 0.0;
  for (const ResultRow& row : rows) total_seconds += row.seconds;
  std::printf("total pipeline time: %.3f s\n", total_seconds);

  strip_timings(rows, opt.timings);
  emit_results(rows, cfg.output_path);
  std::printf("results written to %s\n", cfg.output_path.c_str());
  return 0;
}

int cmd_validate(const CliOptions& opt) {
  if (opt.config_path.empty()) throw ConfigError("validate needs --config");
  const ExperimentConfig cfg = make_config(opt);
  check_config(cfg);
  if (!std::filesystem::exists(cfg.dataset_path)) {
    throw DataError("dataset file '" + cfg.dataset_path + "' does not exist");
  }
  if (!std::filesystem::exists(cfg.labels_path)) {
    throw DataError("labels file '" + cfg.labels_path + "' does not exist");
  }
  const Dataset data = load_dataset(cfg.dataset_path, cfg.labels_path);
  const int n = static_cast<int>(data.features.rows());
  for (int k : cfg.k_list) {
    if (k >= n) {
      throw ConfigError("k=" + std::to_string(k) + " must be smaller than the sample count " +
                        std::to_string(n));
    }
  }
  if (cfg.task == Task::classify) {
    stratified_folds(data.labels, cfg.folds, cfg.seed);  // throws on impossible folds
  }
  std::printf("config ok: %d samples, %d features, %d classes\n", n,
              static_cast<int>(data.features.cols()), data.num_classes);
  return 0;
}

int cmd_sweep(const CliOptions& opt) {
  if (opt.mu_grid.empty()) throw ConfigError("sweep needs --mu-grid");
  std::vector<double> grid;
  for (const std::string& tok : split_csv(opt.mu_grid)) {
    try {
      grid.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse mu value '" + tok + "'");
    }
  }

  ExperimentConfig cfg = make_config(opt);
  const std::vector<WeightScheme> schemes = expand_schemes(opt.scheme, cfg.scheme);
  const std::vector<Framework> frameworks = expand_frameworks(opt.framework, cfg.framework);
  const Dataset data = load_dataset(cfg.dataset_path, cfg.labels_path);

  std::vector<ResultRow> rows;
  for (WeightScheme scheme : schemes) {
    for (Framework framework : frameworks) {
      ExperimentConfig cell = cfg;
      cell.scheme = scheme;
      cell.framework = framework;
      const SweepResult sweep = sweep_mu(cell, data, grid);
      std::printf("optimal mu for scheme %s, framework %s: %g\n", to_string(scheme).c_str(),
                  to_string(framework).c_str(), sweep.best_mu);
      rows.insert(rows.end(), sweep.rows.begin(), sweep.rows.end());
    }
  }

  strip_timings(rows, opt.timings);
  emit_results(rows, cfg.output_path);
  std::printf("results written to %s\n", cfg.output_path.c_str());
  return 0;
}

void add_common_options(CLI::App* cmd, CliOptions& opt, bool with_mu_grid) {
  cmd->add_option("--config", opt.config_path, "config file (key = value lines)");
  cmd->add_option("--task", opt.task, "cluster or classify");
  cmd->add_option("--scheme", opt.scheme,
                  "weight scheme, comma list, or 'all' (binary, sum, centroid, "
                  "volume-gram, volume-cm, volume-face, trace, llre)");
  cmd->add_option("--framework", opt.framework,
                  "Laplacian framework, comma list, or 'all' (zhou, clique, star)");
  cmd->add_option("--k", opt.k, "neighbourhood size or comma list, e.g. 5 or 10,20,30");
  cmd->add_option("--mu", opt.mu, "weight scaling parameter")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", opt.lambda, "classification trade-off parameter")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--folds", opt.folds, "cross-validation folds")
      ->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--seed", opt.seed, "random seed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--restarts", opt.restarts, "k-means restarts")
      ->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--out", opt.out, "result CSV path");
  cmd->add_flag("--timings", opt.timings,
                "write measured wall times into the seconds column (off by default so "
                "result files are byte-reproducible)");
  if (with_mu_grid) {
    cmd->add_option("--mu-grid", opt.mu_grid, "comma list of mu values, e.g. 0.1,1,10,100");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph learning experiments"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* run = app.add_subcommand("run", "run one experiment or a scheme x framework grid");
  add_common_options(run, opt, false);
  CLI::App* validate = app.add_subcommand("validate", "check a config file and its data");
  add_common_options(validate, opt, false);
  CLI::App* sweep = app.add_subcommand("sweep", "run the experiment over a mu grid");
  add_common_options(sweep, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    if (validate->parsed()) return cmd_validate(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
