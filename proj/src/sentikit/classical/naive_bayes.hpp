#pragma once

#include "sentikit/classical/types.hpp"
#include "sentikit/numeric/tensor.hpp"

namespace sentikit::classical {

/// Multinomial naive Bayes with additive smoothing:
///   theta[c][t] = (count[c][t] + alpha) / (sum_t count[c][t] + alpha * V).
struct NaiveBayesModel {
  std::array<double, kNumClasses> log_prior{};
  numeric::Tensor log_theta;  // (3, V)

  /// Normalized log-posteriors, so exp(scores) sums to one.
  Scores scores(const SparseVector& x) const;

  friend bool operator==(const NaiveBayesModel&, const NaiveBayesModel&) = default;
};

/// X holds term counts (or TF-IDF weights when forced). Every class must
/// occur in y.
NaiveBayesModel nb_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, double alpha);

}  // namespace sentikit::classical
