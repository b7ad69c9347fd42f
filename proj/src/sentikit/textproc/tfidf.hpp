#pragma once

#include <vector>

#include "sentikit/numeric/sparse.hpp"
#include "sentikit/textproc/vocabulary.hpp"

namespace sentikit::textproc {

/// Raw counts of in-vocabulary tokens. Out-of-vocabulary tokens are dropped
/// rather than mapped to UNK.
numeric::SparseVector bow_vectorize(const Tokens& doc, const Vocabulary& vocab);

/// Smoothed inverse document frequencies, idf(t) = ln((1 + N) / (1 + df(t))) + 1.
class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(std::vector<double> idf, std::size_t document_count)
      : idf_(std::move(idf)), document_count_(document_count) {}

  const std::vector<double>& idf() const noexcept { return idf_; }
  std::size_t document_count() const noexcept { return document_count_; }
  std::size_t dimension() const noexcept { return idf_.size(); }

  /// count * idf per token, then L2-normalized. Empty documents stay zero.
  numeric::SparseVector transform(const Tokens& doc, const Vocabulary& vocab) const;

  friend bool operator==(const TfidfModel&, const TfidfModel&) = default;

 private:
  std::vector<double> idf_;
  std::size_t document_count_ = 0;
};

double smoothed_idf(std::size_t document_count, std::size_t document_frequency);

TfidfModel tfidf_fit(const std::vector<Tokens>& docs, const Vocabulary& vocab);

}  // namespace sentikit::textproc
