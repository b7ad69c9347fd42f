#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sentikit/classical/classifier.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/eval/metrics.hpp"
#include "sentikit/neural/trainer.hpp"
#include "sentikit/pipeline/featurizer.hpp"
#include "sentikit/textproc/embeddings.hpp"

namespace sentikit::pipeline {

struct NeuralOptions {
  neural::CnnSpec cnn;
  neural::LstmSpec lstm;
  neural::TrainConfig train;
  std::size_t embedding_dim = textproc::kDefaultEmbeddingDim;
  /// Word-vector text file; random initialization when absent.
  std::optional<std::filesystem::path> embeddings_path;
  double dev_fraction = 0.1;

  void validate() const;
  Json to_json() const;
  static NeuralOptions from_json(const Json& obj);
};

struct TrainOptions {
  FeaturizerConfig featurizer;
  classical::Hyperparams hyperparams;
  NeuralOptions neural;
  std::uint64_t seed = 0;
};

/// A fitted featurizer bundled with either a classical model or a network,
/// so one file is enough to score raw text.
class TrainedModel {
 public:
  TrainedModel(Algorithm algorithm, Featurizer featurizer, classical::ClassifierModel model);
  TrainedModel(Algorithm algorithm, Featurizer featurizer, neural::Network network, neural::TrainingHistory history);

  Algorithm algorithm() const noexcept { return algorithm_; }
  const Featurizer& featurizer() const noexcept { return featurizer_; }
  const classical::ClassifierModel* classifier() const noexcept { return classifier_ ? &*classifier_ : nullptr; }
  const neural::Network* network() const noexcept { return network_ ? &*network_ : nullptr; }
  const std::optional<neural::TrainingHistory>& history() const noexcept { return history_; }

  eval::ScoreRow score(const textproc::Tokens& doc) const;
  eval::ScoreRow score_text(const std::string& text) const;
  std::vector<eval::ScoreRow> score_corpus(const corpus::LabeledCorpus& corpus) const;
  eval::EvalReport evaluate(const corpus::LabeledCorpus& gold) const;

  Json to_json() const;
  static TrainedModel from_json(const Json& obj);
  void save(const std::filesystem::path& path) const;
  static TrainedModel load(const std::filesystem::path& path);

 private:
  Algorithm algorithm_;
  Featurizer featurizer_;
  std::optional<classical::ClassifierModel> classifier_;
  std::optional<neural::Network> network_;
  std::optional<neural::TrainingHistory> history_;
};

/// Fits the featurizer and the model on `train`. Neural models first carve
/// a stratified dev split off `train` for early stopping; the featurizer
/// then sees only the fit part.
TrainedModel train_model(Algorithm algorithm, const corpus::LabeledCorpus& train, const TrainOptions& options);

/// Network input for one document. A document without tokens is read as a
/// single unknown token so it still has a last real position.
textproc::EncodedSequence network_input(const Featurizer& featurizer, const textproc::Tokens& doc);

}  // namespace sentikit::pipeline
