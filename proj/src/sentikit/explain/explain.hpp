#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "sentikit/classical/classifier.hpp"
#include "sentikit/common/json_io.hpp"
#include "sentikit/textproc/vocabulary.hpp"

namespace sentikit::explain {

struct WordImportance {
  std::string token;
  double importance = 0.0;  // max over classes of |weight|
  std::array<double, kNumClasses> per_class_weights{};
  friend bool operator==(const WordImportance&, const WordImportance&) = default;
};

/// The k most important real tokens of a logistic-regression model, by
/// importance descending then token ascending.
std::vector<WordImportance> top_words(const classical::ClassifierModel& model, const textproc::Vocabulary& vocab,
                                      std::size_t k = 20);

Json to_json(const std::vector<WordImportance>& words);
std::vector<WordImportance> words_from_json(const Json& arr);

void export_wordcloud(const std::vector<WordImportance>& words, const std::filesystem::path& path);
std::vector<WordImportance> load_wordcloud(const std::filesystem::path& path);

}  // namespace sentikit::explain
