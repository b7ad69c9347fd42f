#pragma once

#include <vector>

#include "sentikit/classical/algorithm.hpp"
#include "sentikit/classical/hyperparams.hpp"
#include "sentikit/common/json_io.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/numeric/sparse.hpp"
#include "sentikit/textproc/sequence.hpp"
#include "sentikit/textproc/tfidf.hpp"
#include "sentikit/textproc/tokenize.hpp"
#include "sentikit/textproc/vocabulary.hpp"

namespace sentikit::pipeline {

struct FeaturizerConfig {
  std::size_t min_df = 2;
  std::size_t max_vocab = 5000;
  std::size_t max_len = textproc::kDefaultMaxLength;

  void validate() const;
  Json to_json() const;
  static FeaturizerConfig from_json(const Json& obj);
  friend bool operator==(const FeaturizerConfig&, const FeaturizerConfig&) = default;
};

std::vector<textproc::Tokens> tokenize_corpus(const corpus::LabeledCorpus& corpus);

/// Vocabulary plus fitted IDF, learned from one training set only.
class Featurizer {
 public:
  Featurizer() = default;
  static Featurizer fit(const std::vector<textproc::Tokens>& docs, const FeaturizerConfig& config);

  const FeaturizerConfig& config() const noexcept { return config_; }
  const textproc::Vocabulary& vocabulary() const noexcept { return vocab_; }
  const textproc::TfidfModel& tfidf() const noexcept { return tfidf_; }

  numeric::SparseVector counts(const textproc::Tokens& doc) const;
  numeric::SparseVector weighted(const textproc::Tokens& doc) const;
  textproc::EncodedSequence sequence(const textproc::Tokens& doc) const;

  /// Raw counts for multinomial NB (unless it asks for TF-IDF), TF-IDF for
  /// every other classical algorithm.
  numeric::SparseVector features(Algorithm algorithm, const classical::Hyperparams& hp,
                                 const textproc::Tokens& doc) const;
  numeric::SparseRowMatrix matrix(Algorithm algorithm, const classical::Hyperparams& hp,
                                  const std::vector<textproc::Tokens>& docs) const;

  Json to_json() const;
  static Featurizer from_json(const Json& obj);
  friend bool operator==(const Featurizer&, const Featurizer&) = default;

 private:
  FeaturizerConfig config_;
  textproc::Vocabulary vocab_;
  textproc::TfidfModel tfidf_;
};

}  // namespace sentikit::pipeline
