#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace sentikit {

/// The three annotation categories. The enumerator order is the fixed
/// tie-break order used everywhere a deterministic choice between classes
/// is needed.
enum class Sentiment : int { kNegative = 0, kPositive = 1, kNeutral = 2 };

inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::array<Sentiment, kNumClasses> kAllSentiments = {
    Sentiment::kNegative, Sentiment::kPositive, Sentiment::kNeutral};

constexpr std::size_t class_index(Sentiment s) noexcept { return static_cast<std::size_t>(s); }
constexpr Sentiment sentiment_at(std::size_t index) noexcept { return static_cast<Sentiment>(index); }

/// "Negative", "Positive" or "Neutral".
std::string_view sentiment_name(Sentiment s) noexcept;

/// Exact, case-sensitive inverse of sentiment_name.
std::optional<Sentiment> parse_sentiment(std::string_view name) noexcept;

}  // namespace sentikit
