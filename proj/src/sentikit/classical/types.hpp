#pragma once

#include <array>
#include <span>
#include <vector>

#include "sentikit/corpus/sentiment.hpp"
#include "sentikit/numeric/sparse.hpp"

namespace sentikit::classical {

using numeric::SparseRowMatrix;
using numeric::SparseVector;
using Scores = std::array<double, kNumClasses>;

/// Throws unless X and y have matching lengths and X is non-empty.
void check_training_set(const SparseRowMatrix& x, std::span<const Sentiment> y);

}  // namespace sentikit::classical
