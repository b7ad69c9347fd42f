#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentikit/classical/algorithm.hpp"
#include "sentikit/common/json_io.hpp"
#include "sentikit/corpus/sentiment.hpp"

namespace sentikit::eval {

using ScoreRow = std::array<double, kNumClasses>;
using Confusion = std::array<std::array<std::size_t, kNumClasses>, kNumClasses>;

double accuracy(std::span<const Sentiment> predicted, std::span<const Sentiment> gold);

/// Probability that a random positive outscores a random negative, ties
/// counted one half. Computed from tie-grouped ranks with integer counts,
/// so the result equals the pairwise definition exactly.
double roc_auc_binary(std::span<const double> scores, std::span<const bool> positives);

/// Argmax with ties resolved toward the earlier class.
Sentiment predict_label(const ScoreRow& scores);

struct EvalReport {
  double accuracy = 0.0;
  /// Absent for a class the gold labels never (or always) contain.
  std::array<std::optional<double>, kNumClasses> auc_per_class;
  std::optional<double> macro_auc;
  bool partial = false;
  Confusion confusion{};
  std::size_t n = 0;

  Json to_json() const;
  static EvalReport from_json(const Json& obj);
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

EvalReport evaluate(std::span<const ScoreRow> scores, std::span<const Sentiment> gold);

struct TableRow {
  Algorithm algorithm;
  double accuracy;
  std::optional<double> macro_auc;
};

/// Three-column text table: Algorithm | Accuracy | Averaged AUC.
std::string format_table(std::span<const TableRow> rows);

}  // namespace sentikit::eval
