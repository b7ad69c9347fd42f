#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentikit/textproc/tokenize.hpp"

namespace sentikit::textproc {

inline constexpr std::uint32_t kPadId = 0;
inline constexpr std::uint32_t kUnkId = 1;
inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";

/// Dense token index with PAD at 0 and UNK at 1. Neither reserved string
/// can be produced by tokenize, since '<' and '>' are stripped.
class Vocabulary {
 public:
  Vocabulary();
  /// `tokens` excludes the two reserved entries.
  explicit Vocabulary(const std::vector<std::string>& tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& token(std::uint32_t id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::optional<std::uint32_t> find(const std::string& token) const;

  /// FNV-1a over the newline-joined token list.
  std::uint64_t hash() const noexcept;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Keeps tokens with document frequency >= min_df, ranked by (df desc,
/// token asc), truncated to max_size - 2 so the reserved entries fit.
Vocabulary build_vocabulary(const std::vector<Tokens>& docs, std::size_t min_df, std::size_t max_size);

/// Number of documents containing each vocabulary token.
std::vector<std::size_t> document_frequencies(const std::vector<Tokens>& docs, const Vocabulary& vocab);

}  // namespace sentikit::textproc
