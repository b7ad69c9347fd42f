#include "sentikit/textproc/vocabulary.hpp"

#include <algorithm>
#include <unordered_set>

#include "sentikit/common/error.hpp"

namespace sentikit::textproc {

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(const std::vector<std::string>& tokens) {
  tokens_.reserve(tokens.size() + 2);
  tokens_.push_back(kPadToken);
  tokens_.push_back(kUnkToken);
  tokens_.insert(tokens_.end(), tokens.begin(), tokens.end());
  for (std::uint32_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw_error(ErrorKind::kInvalidArgument, "duplicate vocabulary token \"" + tokens_[i] + "\"");
    }
  }
}

std::optional<std::uint32_t> Vocabulary::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& t : tokens_) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= '\n';
    h *= 0x100000001b3ULL;
  }
  return h;
}

Vocabulary build_vocabulary(const std::vector<Tokens>& docs, std::size_t min_df, std::size_t max_size) {
  require(!docs.empty(), "vocabulary: corpus is empty");
  require(min_df >= 1, "vocabulary: min_df must be at least 1");
  require(max_size >= 2, "vocabulary: max_size must be at least 2");
  std::unordered_map<std::string, std::size_t> df;
  for (const Tokens& doc : docs) {
    std::unordered_set<std::string> seen(doc.begin(), doc.end());
    for (const std::string& t : seen) ++df[t];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [token, count] : df) {
    if (count >= min_df) ranked.emplace_back(token, count);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > max_size - 2) ranked.resize(max_size - 2);
  std::vector<std::string> tokens;
  tokens.reserve(ranked.size());
  for (auto& [token, count] : ranked) tokens.push_back(token);
  return Vocabulary(tokens);
}

std::vector<std::size_t> document_frequencies(const std::vector<Tokens>& docs, const Vocabulary& vocab) {
  std::vector<std::size_t> df(vocab.size(), 0);
  std::vector<std::size_t> last_doc(vocab.size(), static_cast<std::size_t>(-1));
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const std::string& t : docs[d]) {
      auto id = vocab.find(t);
      if (!id || last_doc[*id] == d) continue;
      last_doc[*id] = d;
      ++df[*id];
    }
  }
  return df;
}

}  // namespace sentikit::textproc
