#pragma once

#include <cstdint>

#include "sentikit/classical/types.hpp"
#include "sentikit/numeric/tensor.hpp"

namespace sentikit::classical {

/// Multinomial softmax regression: p = softmax(W x + b).
struct LogisticRegressionModel {
  numeric::Tensor weights;  // (3, dim)
  std::array<double, kNumClasses> bias{};

  Scores scores(const SparseVector& x) const;

  friend bool operator==(const LogisticRegressionModel&, const LogisticRegressionModel&) = default;
};

struct LogisticObjective {
  double loss = 0.0;
  numeric::Tensor grad_weights;
  std::array<double, kNumClasses> grad_bias{};
};

/// Mean cross-entropy over the rows plus (l2 / 2) * ||W||^2 (bias is not
/// penalized), with its exact gradient.
LogisticObjective logreg_objective(const LogisticRegressionModel& model, const SparseRowMatrix& x,
                                   std::span<const Sentiment> y, double l2);

/// Full-batch gradient descent from zero weights. `seed` is accepted for a
/// uniform fit signature; the procedure is deterministic without it.
LogisticRegressionModel logreg_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, double l2,
                                   std::size_t steps, double rate, std::uint64_t seed = 0);

}  // namespace sentikit::classical
