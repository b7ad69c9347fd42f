#include "sentikit/classical/naive_bayes.hpp"

#include <cmath>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/functions.hpp"

namespace sentikit::classical {

void check_training_set(const SparseRowMatrix& x, std::span<const Sentiment> y) {
  require(x.rows() == y.size(), "feature rows and labels differ in length");
  require(x.rows() > 0, "empty training set");
}

NaiveBayesModel nb_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, double alpha) {
  check_training_set(x, y);
  require(alpha > 0.0, "naive Bayes alpha must be positive");
  const std::size_t vocab = x.cols();
  std::array<std::size_t, kNumClasses> docs{};
  numeric::Tensor counts({kNumClasses, vocab});
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::size_t c = class_index(y[i]);
    ++docs[c];
    for (const auto& e : x.row(i).entries()) counts.at(c, e.index) += e.value;
  }
  NaiveBayesModel model;
  model.log_theta = numeric::Tensor({kNumClasses, vocab});
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (docs[c] == 0) {
      throw_error(ErrorKind::kInvalidArgument,
                  "class " + std::string(sentiment_name(sentiment_at(c))) + " is absent from the training data");
    }
    model.log_prior[c] = std::log(static_cast<double>(docs[c]) / static_cast<double>(x.rows()));
    double total = 0.0;
    for (std::size_t t = 0; t < vocab; ++t) total += counts.at(c, t);
    const double denom = std::log(total + alpha * static_cast<double>(vocab));
    for (std::size_t t = 0; t < vocab; ++t) model.log_theta.at(c, t) = std::log(counts.at(c, t) + alpha) - denom;
  }
  return model;
}

Scores NaiveBayesModel::scores(const SparseVector& x) const {
  require(x.dimension() == log_theta.dim(1), "naive Bayes: feature dimension mismatch");
  std::array<double, kNumClasses> joint = log_prior;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    joint[c] += x.dot_dense(log_theta.data() + c * log_theta.dim(1));
  }
  const auto normalized = numeric::log_softmax(joint);
  return {normalized[0], normalized[1], normalized[2]};
}

}  // namespace sentikit::classical
