#include "sentikit/corpus/sentiment.hpp"

namespace sentikit {

std::string_view sentiment_name(Sentiment s) noexcept {
  switch (s) {
    case Sentiment::kNegative: return "Negative";
    case Sentiment::kPositive: return "Positive";
    case Sentiment::kNeutral: return "Neutral";
  }
  return "?";
}

std::optional<Sentiment> parse_sentiment(std::string_view name) noexcept {
  for (Sentiment s : kAllSentiments) {
    if (sentiment_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace sentikit
