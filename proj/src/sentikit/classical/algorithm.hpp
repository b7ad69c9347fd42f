#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace sentikit {

/// The seven model families, in report order.
enum class Algorithm { kNaiveBayes, kRandomForest, kLinearSvm, kLogisticRegression, kKnn, kCnn, kLstm };

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::kNaiveBayes, Algorithm::kRandomForest,     Algorithm::kLinearSvm, Algorithm::kLogisticRegression,
    Algorithm::kKnn,        Algorithm::kCnn,              Algorithm::kLstm};

inline constexpr std::array<Algorithm, 5> kClassicalAlgorithms = {
    Algorithm::kNaiveBayes, Algorithm::kRandomForest, Algorithm::kLinearSvm, Algorithm::kLogisticRegression,
    Algorithm::kKnn};

/// Short tags: nb, rf, svm, lr, knn, cnn, lstm.
std::string_view algorithm_tag(Algorithm a) noexcept;
std::string_view algorithm_display_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view tag) noexcept;

constexpr bool is_neural(Algorithm a) noexcept { return a == Algorithm::kCnn || a == Algorithm::kLstm; }

}  // namespace sentikit
