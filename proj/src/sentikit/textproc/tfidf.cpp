#include "sentikit/textproc/tfidf.hpp"

#include <cmath>

#include "sentikit/common/error.hpp"

namespace sentikit::textproc {

numeric::SparseVector bow_vectorize(const Tokens& doc, const Vocabulary& vocab) {
  std::vector<numeric::SparseVector::Entry> entries;
  entries.reserve(doc.size());
  for (const std::string& t : doc) {
    if (auto id = vocab.find(t)) entries.push_back({*id, 1.0});
  }
  return numeric::SparseVector::from_entries(vocab.size(), std::move(entries));
}

double smoothed_idf(std::size_t document_count, std::size_t document_frequency) {
  return std::log((1.0 + static_cast<double>(document_count)) / (1.0 + static_cast<double>(document_frequency))) +
         1.0;
}

TfidfModel tfidf_fit(const std::vector<Tokens>& docs, const Vocabulary& vocab) {
  require(!docs.empty(), "tfidf: corpus is empty");
  const auto df = document_frequencies(docs, vocab);
  std::vector<double> idf(vocab.size());
  for (std::size_t i = 0; i < idf.size(); ++i) idf[i] = smoothed_idf(docs.size(), df[i]);
  return TfidfModel(std::move(idf), docs.size());
}

numeric::SparseVector TfidfModel::transform(const Tokens& doc, const Vocabulary& vocab) const {
  require(vocab.size() == idf_.size(), "tfidf: vocabulary does not match the fitted model");
  numeric::SparseVector v = bow_vectorize(doc, vocab);
  std::vector<numeric::SparseVector::Entry> weighted = v.entries();
  for (auto& e : weighted) e.value *= idf_[e.index];
  v = numeric::SparseVector::from_entries(vocab.size(), std::move(weighted));
  const double norm = v.norm();
  if (norm > 0.0) v.scale(1.0 / norm);
  return v;
}

}  // namespace sentikit::textproc
