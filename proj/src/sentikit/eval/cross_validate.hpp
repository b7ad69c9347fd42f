#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sentikit/classical/hyperparams.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/corpus/split.hpp"
#include "sentikit/eval/metrics.hpp"
#include "sentikit/pipeline/featurizer.hpp"

namespace sentikit::eval {

struct CvConfig {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  /// Select on mean macro AUC instead of mean accuracy.
  bool select_by_auc = false;
  pipeline::FeaturizerConfig featurizer;
};

struct FoldScore {
  double accuracy = 0.0;
  std::optional<double> macro_auc;
};

struct ConfigResult {
  classical::Hyperparams hyperparams;
  std::vector<FoldScore> folds;
  double mean_accuracy = 0.0;
  std::optional<double> mean_macro_auc;
};

struct CvResult {
  Algorithm algorithm;
  std::vector<ConfigResult> configs;
  std::size_t chosen = 0;

  const classical::Hyperparams& chosen_hyperparams() const { return configs.at(chosen).hyperparams; }
  Json to_json() const;
};

/// Sees each fold's split and the featurizer fitted on its training part.
using FoldObserver = std::function<void(std::size_t fold, const corpus::Split&, const pipeline::Featurizer&)>;

/// k-fold model selection for one classical algorithm. Features are refit on
/// every fold's training part; the chosen configuration has the best mean
/// score with ties going to the earliest grid entry.
CvResult cross_validate(Algorithm algorithm, std::span<const classical::Hyperparams> grid,
                        const corpus::LabeledCorpus& corpus, const CvConfig& config,
                        const FoldObserver& observer = {});

}  // namespace sentikit::eval
