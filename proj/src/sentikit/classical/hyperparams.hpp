#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sentikit/classical/algorithm.hpp"
#include "sentikit/common/json_io.hpp"

namespace sentikit::classical {

struct Hyperparams {
  double nb_alpha = 1.0;
  bool nb_use_tfidf = false;  // multinomial NB normally sees raw counts

  double lr_l2 = 1e-3;
  std::size_t lr_steps = 500;
  double lr_rate = 1.0;

  double svm_c = 1.0;
  std::size_t svm_epochs = 100;

  std::size_t knn_k = 5;

  std::size_t rf_trees = 100;
  std::optional<std::size_t> rf_max_depth;  // unlimited when absent
  std::size_t rf_min_split = 2;

  std::uint64_t seed = 0;

  void validate() const;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

Json to_json(const Hyperparams& hp);
/// Missing keys keep their defaults; unknown keys are rejected.
Hyperparams hyperparams_from_json(const Json& obj, Hyperparams base = {});

/// Only the fields that matter to `algorithm`, for reports.
Json relevant_json(const Hyperparams& hp, Algorithm algorithm);

/// Default model-selection grid for one classical algorithm:
///   nb   alpha in {0.1, 0.5, 1.0}
///   lr   l2 in {1e-3, 1e-2, 1e-1}
///   svm  c in {0.1, 1, 10}
///   knn  k in {3, 5, 7, 11}
///   rf   trees in {100, 200} x depth in {unlimited, 16}
std::vector<Hyperparams> default_grid(Algorithm algorithm, const Hyperparams& base);

}  // namespace sentikit::classical
