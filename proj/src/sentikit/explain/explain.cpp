#include "sentikit/explain/explain.hpp"

#include <algorithm>
#include <cmath>

#include "sentikit/common/error.hpp"

namespace sentikit::explain {

std::vector<WordImportance> top_words(const classical::ClassifierModel& model, const textproc::Vocabulary& vocab,
                                      std::size_t k) {
  require(model.algorithm() == Algorithm::kLogisticRegression, "explain: requires a logistic-regression model");
  require(model.dimension() == vocab.size(), "explain: model dimension does not match the vocabulary");
  require(k <= vocab.size() - 2, "explain: k exceeds the number of real tokens");
  const auto& lr = std::get<classical::LogisticRegressionModel>(model.params());

  std::vector<WordImportance> all;
  all.reserve(vocab.size() - 2);
  for (std::uint32_t id = 0; id < vocab.size(); ++id) {
    if (id == textproc::kPadId || id == textproc::kUnkId) continue;
    WordImportance w{vocab.token(id), 0.0, {}};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      w.per_class_weights[c] = lr.weights.at(c, id);
      w.importance = std::max(w.importance, std::abs(w.per_class_weights[c]));
    }
    all.push_back(std::move(w));
  }
  auto before = [](const WordImportance& a, const WordImportance& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.token < b.token;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), before);
  all.resize(k);
  return all;
}

Json to_json(const std::vector<WordImportance>& words) {
  Json arr = Json::array();
  for (const auto& w : words) {
    arr.push_back({{"token", w.token}, {"importance", w.importance}, {"per_class_weights", w.per_class_weights}});
  }
  return arr;
}

std::vector<WordImportance> words_from_json(const Json& arr) {
  require(arr.is_array(), "explain: expected a JSON array");
  std::vector<WordImportance> out;
  try {
    for (const auto& j : arr) {
      out.push_back({j.at("token").get<std::string>(), j.at("importance").get<double>(),
                     j.at("per_class_weights").get<std::array<double, kNumClasses>>()});
    }
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, std::string("explain: malformed word list: ") + e.what());
  }
  return out;
}

void export_wordcloud(const std::vector<WordImportance>& words, const std::filesystem::path& path) {
  write_text_file_atomic(path, canonical_dump(to_json(words)) + "\n");
}

std::vector<WordImportance> load_wordcloud(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  Json parsed;
  try {
    parsed = Json::parse(text);
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, std::string("explain: ") + e.what());
  }
  return words_from_json(parsed);
}

}  // namespace sentikit::explain
