#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sentikit/classical/types.hpp"

namespace sentikit::classical {

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  Sentiment label = Sentiment::kNegative;
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  Sentiment predict(const SparseVector& x) const;
  std::size_t depth() const;
  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct RandomForestModel {
  std::vector<DecisionTree> trees;

  /// Fraction of trees voting for each class.
  Scores scores(const SparseVector& x) const;
  friend bool operator==(const RandomForestModel&, const RandomForestModel&) = default;
};

/// 1 - sum_c p_c^2 for the given class counts.
double gini_impurity(const std::array<std::size_t, kNumClasses>& counts);

/// CART with Gini impurity. Each tree draws its bootstrap sample and its
/// split candidates from rng_split(seed, tree index). At every node features
/// are drawn without replacement until ceil(sqrt(dim)) non-constant ones
/// have been evaluated (or none remain); thresholds sit at midpoints between
/// consecutive distinct observed values. A forest of one tree is grown on
/// the full training sample rather than a bootstrap.
RandomForestModel rf_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, std::size_t trees,
                         std::optional<std::size_t> max_depth, std::size_t min_split, std::uint64_t seed);

}  // namespace sentikit::classical
