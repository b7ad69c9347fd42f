#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentikit/corpus/sentiment.hpp"

namespace sentikit::corpus {

struct Comment {
  std::string id;
  std::string text;
  friend bool operator==(const Comment&, const Comment&) = default;
};

struct Item {
  Comment comment;
  std::optional<Sentiment> label;
  friend bool operator==(const Item&, const Item&) = default;
};

enum class Format { kJsonl, kCsv };

/// Ordered collection of comments with optional gold labels. Ids are unique
/// and every text is non-blank; both are checked on insertion.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;
  explicit LabeledCorpus(std::vector<Item> items);

  void add(Item item);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Item& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Item>& items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  const Item* find(const std::string& id) const;
  bool all_labeled() const noexcept;
  std::array<std::size_t, kNumClasses> class_counts() const noexcept;
  std::size_t unlabeled_count() const noexcept;

  /// Gold labels in corpus order. Throws if any item is unlabeled.
  std::vector<Sentiment> labels() const;

  /// Items at the given positions, in the order given.
  LabeledCorpus subset(const std::vector<std::size_t>& positions) const;

  /// Same items with labels removed.
  LabeledCorpus without_labels() const;

  friend bool operator==(const LabeledCorpus& a, const LabeledCorpus& b) { return a.items_ == b.items_; }

 private:
  std::vector<Item> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::optional<Format> parse_format(const std::string& name);

/// Parses a corpus file. Errors carry the 1-based line number of the
/// offending record.
LabeledCorpus load_corpus(const std::filesystem::path& path, Format format);
LabeledCorpus parse_jsonl(const std::string& contents);
LabeledCorpus parse_csv(const std::string& contents);

/// Canonical JSONL, one object per item in corpus order.
std::string to_jsonl(const LabeledCorpus& corpus);
void save_corpus(const LabeledCorpus& corpus, const std::filesystem::path& path);

}  // namespace sentikit::corpus
