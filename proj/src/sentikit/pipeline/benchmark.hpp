#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentikit/corpus/split.hpp"
#include "sentikit/eval/cross_validate.hpp"
#include "sentikit/pipeline/pipeline.hpp"

namespace sentikit::pipeline {

struct BenchmarkConfig {
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  std::size_t folds = 5;
  bool select_by_auc = false;
  FeaturizerConfig featurizer;
  NeuralOptions neural;
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  /// Per-algorithm grid; default_grid() where missing.
  std::map<Algorithm, std::vector<classical::Hyperparams>> grids;
  std::function<void(const std::string&)> log;

  void validate() const;
  /// Keys absent from `obj` keep the values in `base`.
  static BenchmarkConfig from_json(const Json& obj, BenchmarkConfig base);
};

struct BenchmarkRow {
  Algorithm algorithm;
  eval::EvalReport report;
  /// Selected hyperparameters (classical) or training summary (neural).
  Json selection;
  std::optional<eval::CvResult> cv;
};

struct BenchmarkReport {
  std::uint64_t seed = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::vector<BenchmarkRow> rows;

  Json to_json() const;
  std::string table() const;
};

/// Stratified holdout split; k-fold selection of every classical
/// configuration on the training part; refit of the chosen configuration;
/// neural training with a dev split for early stopping; scoring on the
/// holdout. All randomness derives from config.seed.
BenchmarkReport run_benchmark(const corpus::LabeledCorpus& gold, const BenchmarkConfig& config);

}  // namespace sentikit::pipeline
