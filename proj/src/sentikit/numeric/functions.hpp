#pragma once

#include <span>
#include <vector>

namespace sentikit::numeric {

/// Softmax with the maximum subtracted before exponentiation.
std::vector<double> stable_softmax(std::span<const double> logits);

/// log(softmax(logits)) without forming the probabilities.
std::vector<double> log_softmax(std::span<const double> logits);

/// Logistic function, evaluated branch-wise so neither tail overflows.
double sigmoid(double x) noexcept;

/// log(1 + exp(x)) without overflow.
double softplus(double x) noexcept;

/// Index of the first maximum. Ties resolve to the lowest index, which for
/// class scores is the fixed order Negative < Positive < Neutral.
std::size_t argmax(std::span<const double> values);

}  // namespace sentikit::numeric
