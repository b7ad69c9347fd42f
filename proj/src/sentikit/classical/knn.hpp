#pragma once

#include <vector>

#include "sentikit/classical/types.hpp"

namespace sentikit::classical {

/// Stores the training rows; scoring is a cosine-similarity vote.
struct KnnModel {
  SparseRowMatrix rows;
  std::vector<Sentiment> labels;
  std::size_t k = 5;

  Scores scores(const SparseVector& x) const;

  friend bool operator==(const KnnModel& a, const KnnModel& b) {
    return a.labels == b.labels && a.k == b.k && a.rows.row_list() == b.rows.row_list();
  }
};

double cosine_similarity(const SparseVector& a, const SparseVector& b);

/// score_c = sum of similarities of the k most similar training rows with
/// label c. Similarity ties keep the lower row index.
Scores knn_scores(const SparseRowMatrix& train_x, std::span<const Sentiment> train_y, const SparseVector& x,
                  std::size_t k);

KnnModel knn_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, std::size_t k);

}  // namespace sentikit::classical
