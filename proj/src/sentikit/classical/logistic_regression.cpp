#include "sentikit/classical/logistic_regression.hpp"

#include <cmath>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/functions.hpp"

namespace sentikit::classical {

namespace {

std::array<double, kNumClasses> logits(const LogisticRegressionModel& model, const SparseVector& x) {
  const std::size_t dim = model.weights.dim(1);
  std::array<double, kNumClasses> z{};
  for (std::size_t c = 0; c < kNumClasses; ++c) z[c] = model.bias[c] + x.dot_dense(model.weights.data() + c * dim);
  return z;
}

}  // namespace

Scores LogisticRegressionModel::scores(const SparseVector& x) const {
  require(x.dimension() == weights.dim(1), "logistic regression: feature dimension mismatch");
  const auto p = numeric::stable_softmax(logits(*this, x));
  return {p[0], p[1], p[2]};
}

LogisticObjective logreg_objective(const LogisticRegressionModel& model, const SparseRowMatrix& x,
                                   std::span<const Sentiment> y, double l2) {
  check_training_set(x, y);
  const std::size_t dim = model.weights.dim(1);
  require(x.cols() == dim, "logistic regression: feature dimension mismatch");
  LogisticObjective out;
  out.grad_weights = numeric::Tensor({kNumClasses, dim});
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const SparseVector& row = x.row(i);
    const auto z = logits(model, row);
    const auto log_p = numeric::log_softmax(z);
    const std::size_t gold = class_index(y[i]);
    out.loss -= log_p[gold] * inv_n;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      const double residual = (std::exp(log_p[c]) - (c == gold ? 1.0 : 0.0)) * inv_n;
      out.grad_bias[c] += residual;
      double* g = out.grad_weights.data() + c * dim;
      for (const auto& e : row.entries()) g[e.index] += residual * e.value;
    }
  }
  double penalty = 0.0;
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    penalty += model.weights[j] * model.weights[j];
    out.grad_weights[j] += l2 * model.weights[j];
  }
  out.loss += 0.5 * l2 * penalty;
  return out;
}

LogisticRegressionModel logreg_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, double l2,
                                   std::size_t steps, double rate, std::uint64_t /*seed*/) {
  check_training_set(x, y);
  require(l2 >= 0.0, "logistic regression: l2 must be non-negative");
  require(rate > 0.0, "logistic regression: rate must be positive");
  LogisticRegressionModel model;
  model.weights = numeric::Tensor({kNumClasses, x.cols()});
  for (std::size_t step = 0; step < steps; ++step) {
    const LogisticObjective obj = logreg_objective(model, x, y, l2);
    if (!std::isfinite(obj.loss)) {
      throw_error(ErrorKind::kNumeric, "logistic regression: non-finite loss at step " + std::to_string(step));
    }
    for (std::size_t j = 0; j < model.weights.size(); ++j) model.weights[j] -= rate * obj.grad_weights[j];
    for (std::size_t c = 0; c < kNumClasses; ++c) model.bias[c] -= rate * obj.grad_bias[c];
  }
  return model;
}

}  // namespace sentikit::classical
