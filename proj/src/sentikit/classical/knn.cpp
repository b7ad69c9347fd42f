#include "sentikit/classical/knn.hpp"

#include <algorithm>
#include <numeric>

#include "sentikit/common/error.hpp"

namespace sentikit::classical {

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

Scores knn_scores(const SparseRowMatrix& train_x, std::span<const Sentiment> train_y, const SparseVector& x,
                  std::size_t k) {
  require(train_x.rows() > 0, "knn: empty training set");
  require(train_x.rows() == train_y.size(), "knn: rows and labels differ in length");
  require(k >= 1 && k <= train_x.rows(), "knn: k must be between 1 and the training set size");
  std::vector<double> sim(train_x.rows());
  for (std::size_t i = 0; i < train_x.rows(); ++i) sim[i] = cosine_similarity(train_x.row(i), x);
  std::vector<std::size_t> order(train_x.rows());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return sim[a] != sim[b] ? sim[a] > sim[b] : a < b; });
  Scores scores{};
  for (std::size_t j = 0; j < k; ++j) scores[class_index(train_y[order[j]])] += sim[order[j]];
  return scores;
}

KnnModel knn_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, std::size_t k) {
  check_training_set(x, y);
  require(k >= 1 && k % 2 == 1, "knn: k must be odd");
  return KnnModel{x, std::vector<Sentiment>(y.begin(), y.end()), std::min(k, x.rows())};
}

Scores KnnModel::scores(const SparseVector& x) const {
  require(x.dimension() == rows.cols(), "knn: feature dimension mismatch");
  return knn_scores(rows, labels, x, k);
}

}  // namespace sentikit::classical
