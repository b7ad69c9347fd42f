#include "sentikit/pipeline/featurizer.hpp"

#include "sentikit/common/error.hpp"

namespace sentikit::pipeline {

void FeaturizerConfig::validate() const {
  require(min_df >= 1, "featurizer: min_df must be at least 1");
  require(max_vocab >= 3, "featurizer: max_vocab must leave room for real tokens");
  require(max_len >= textproc::kMinSequenceLength,
          "featurizer: max_len must be at least " + std::to_string(textproc::kMinSequenceLength));
}

Json FeaturizerConfig::to_json() const {
  return {{"min_df", min_df}, {"max_vocab", max_vocab}, {"max_len", max_len}};
}

FeaturizerConfig FeaturizerConfig::from_json(const Json& obj) {
  FeaturizerConfig c;
  for (const auto& [key, _] : obj.items()) {
    require(key == "min_df" || key == "max_vocab" || key == "max_len", "featurizer: unknown option " + key);
  }
  c.min_df = obj.value("min_df", c.min_df);
  c.max_vocab = obj.value("max_vocab", c.max_vocab);
  c.max_len = obj.value("max_len", c.max_len);
  c.validate();
  return c;
}

std::vector<textproc::Tokens> tokenize_corpus(const corpus::LabeledCorpus& corpus) {
  std::vector<textproc::Tokens> docs;
  docs.reserve(corpus.size());
  for (const auto& item : corpus) docs.push_back(textproc::tokenize(item.comment.text));
  return docs;
}

Featurizer Featurizer::fit(const std::vector<textproc::Tokens>& docs, const FeaturizerConfig& config) {
  config.validate();
  require(!docs.empty(), "featurizer: no training documents");
  Featurizer f;
  f.config_ = config;
  f.vocab_ = textproc::build_vocabulary(docs, config.min_df, config.max_vocab);
  f.tfidf_ = textproc::tfidf_fit(docs, f.vocab_);
  return f;
}

numeric::SparseVector Featurizer::counts(const textproc::Tokens& doc) const {
  return textproc::bow_vectorize(doc, vocab_);
}

numeric::SparseVector Featurizer::weighted(const textproc::Tokens& doc) const { return tfidf_.transform(doc, vocab_); }

textproc::EncodedSequence Featurizer::sequence(const textproc::Tokens& doc) const {
  return textproc::encode_sequence(doc, vocab_, config_.max_len);
}

numeric::SparseVector Featurizer::features(Algorithm algorithm, const classical::Hyperparams& hp,
                                           const textproc::Tokens& doc) const {
  require(!is_neural(algorithm), "featurizer: sparse features requested for a neural model");
  if (algorithm == Algorithm::kNaiveBayes && !hp.nb_use_tfidf) return counts(doc);
  return weighted(doc);
}

numeric::SparseRowMatrix Featurizer::matrix(Algorithm algorithm, const classical::Hyperparams& hp,
                                            const std::vector<textproc::Tokens>& docs) const {
  numeric::SparseRowMatrix m(vocab_.size());
  for (const auto& doc : docs) m.push_back(features(algorithm, hp, doc));
  return m;
}

Json Featurizer::to_json() const {
  return {{"config", config_.to_json()},
          {"vocabulary", vocab_.tokens()},
          {"idf", tfidf_.idf()},
          {"document_count", tfidf_.document_count()}};
}

Featurizer Featurizer::from_json(const Json& obj) {
  Featurizer f;
  f.config_ = FeaturizerConfig::from_json(obj.at("config"));
  auto tokens = obj.at("vocabulary").get<std::vector<std::string>>();
  require(tokens.size() >= 2 && tokens[textproc::kPadId] == textproc::kPadToken &&
              tokens[textproc::kUnkId] == textproc::kUnkToken,
          "featurizer: vocabulary must start with the PAD and UNK tokens");
  f.vocab_ = textproc::Vocabulary(std::vector<std::string>(tokens.begin() + 2, tokens.end()));
  auto idf = obj.at("idf").get<std::vector<double>>();
  require(idf.size() == f.vocab_.size(), "featurizer: idf length does not match the vocabulary");
  f.tfidf_ = textproc::TfidfModel(std::move(idf), obj.at("document_count").get<std::size_t>());
  return f;
}

}  // namespace sentikit::pipeline
