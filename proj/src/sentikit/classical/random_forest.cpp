#include "sentikit/classical/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/rng.hpp"

namespace sentikit::classical {

namespace {

using Counts = std::array<std::size_t, kNumClasses>;

Sentiment majority(const Counts& counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return sentiment_at(best);
}

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted child impurity
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& columns, std::span<const Sentiment> y,
              std::optional<std::size_t> max_depth, std::size_t min_split, numeric::Rng& rng)
      : columns_(columns), y_(y), max_depth_(max_depth), min_split_(min_split), rng_(rng) {
    candidates_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(columns.size()))));
    feature_order_.resize(columns.size());
    std::iota(feature_order_.begin(), feature_order_.end(), 0);
  }

  DecisionTree build(std::vector<std::size_t> samples) {
    DecisionTree tree;
    grow(tree, std::move(samples), 0);
    return tree;
  }

 private:
  std::int32_t grow(DecisionTree& tree, std::vector<std::size_t> samples, std::size_t depth) {
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    Counts counts{};
    for (std::size_t s : samples) ++counts[class_index(y_[s])];
    tree.nodes[id].label = majority(counts);
    const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t n) { return n > 0; }) <= 1;
    if (pure || samples.size() < min_split_ || (max_depth_ && depth >= *max_depth_)) return id;

    auto split = best_split(samples);
    if (!split) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t s : samples) (columns_[split->feature][s] <= split->threshold ? left : right).push_back(s);
    samples.clear();
    samples.shrink_to_fit();
    tree.nodes[id].feature = static_cast<std::int32_t>(split->feature);
    tree.nodes[id].threshold = split->threshold;
    const auto l = grow(tree, std::move(left), depth + 1);
    const auto r = grow(tree, std::move(right), depth + 1);
    tree.nodes[id].left = l;
    tree.nodes[id].right = r;
    return id;
  }

  std::optional<SplitChoice> best_split(const std::vector<std::size_t>& samples) {
    std::optional<SplitChoice> best;
    std::size_t evaluated = 0;
    std::vector<std::pair<double, std::size_t>> values(samples.size());
    Counts total{};
    for (std::size_t s : samples) ++total[class_index(y_[s])];
    const double n = static_cast<double>(samples.size());

    // Partial Fisher-Yates: position `drawn` receives a uniformly chosen
    // not-yet-drawn feature.
    for (std::size_t drawn = 0; drawn < feature_order_.size() && evaluated < candidates_; ++drawn) {
      const std::size_t pick = drawn + static_cast<std::size_t>(rng_.below(feature_order_.size() - drawn));
      std::swap(feature_order_[drawn], feature_order_[pick]);
      const std::size_t f = feature_order_[drawn];
      const auto& column = columns_[f];
      const double first = column[samples.front()];
      if (std::all_of(samples.begin(), samples.end(), [&](std::size_t s) { return column[s] == first; })) continue;
      for (std::size_t j = 0; j < samples.size(); ++j) values[j] = {column[samples[j]], samples[j]};
      std::sort(values.begin(), values.end());
      ++evaluated;
      Counts left{};
      for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        ++left[class_index(y_[values[j].second])];
        if (values[j].first == values[j + 1].first) continue;
        Counts right{};
        for (std::size_t c = 0; c < kNumClasses; ++c) right[c] = total[c] - left[c];
        const double nl = static_cast<double>(j + 1);
        const double impurity = (nl * gini_impurity(left) + (n - nl) * gini_impurity(right)) / n;
        if (!best || impurity < best->impurity) {
          best = SplitChoice{f, 0.5 * (values[j].first + values[j + 1].first), impurity};
        }
      }
    }
    return best;
  }

  const std::vector<std::vector<double>>& columns_;
  std::span<const Sentiment> y_;
  std::optional<std::size_t> max_depth_;
  std::size_t min_split_;
  numeric::Rng& rng_;
  std::size_t candidates_ = 1;
  std::vector<std::size_t> feature_order_;
};

}  // namespace

double gini_impurity(const Counts& counts) {
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  if (n == 0.0) return 0.0;
  double sum_sq = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / n;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

Sentiment DecisionTree::predict(const SparseVector& x) const {
  std::int32_t id = 0;
  while (nodes[id].feature >= 0) {
    const TreeNode& node = nodes[id];
    id = x.get(static_cast<std::uint32_t>(node.feature)) <= node.threshold ? node.left : node.right;
  }
  return nodes[id].label;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> depth(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (nodes[i].feature >= 0) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  }
  return deepest;
}

Scores RandomForestModel::scores(const SparseVector& x) const {
  require(!trees.empty(), "random forest has no trees");
  Scores s{};
  for (const DecisionTree& t : trees) s[class_index(t.predict(x))] += 1.0;
  for (double& v : s) v /= static_cast<double>(trees.size());
  return s;
}

RandomForestModel rf_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, std::size_t trees,
                         std::optional<std::size_t> max_depth, std::size_t min_split, std::uint64_t seed) {
  check_training_set(x, y);
  require(trees >= 1, "random forest needs at least one tree");
  require(min_split >= 2, "random forest min_split must be at least 2");
  std::vector<std::vector<double>> columns(x.cols(), std::vector<double>(x.rows(), 0.0));
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (const auto& e : x.row(i).entries()) columns[e.index][i] = e.value;
  }
  const numeric::Rng root(seed);
  RandomForestModel model;
  model.trees.reserve(trees);
  const std::size_t n = x.rows();
  for (std::size_t t = 0; t < trees; ++t) {
    numeric::Rng rng = root.split(t);
    std::vector<std::size_t> samples(n);
    if (trees == 1) {
      std::iota(samples.begin(), samples.end(), 0);
    } else {
      for (std::size_t& s : samples) s = static_cast<std::size_t>(rng.below(n));
      std::sort(samples.begin(), samples.end());
    }
    TreeBuilder builder(columns, y, max_depth, min_split, rng);
    model.trees.push_back(builder.build(std::move(samples)));
  }
  return model;
}

}  // namespace sentikit::classical
