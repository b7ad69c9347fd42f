#include "sentikit/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <numeric>

#include "sentikit/common/error.hpp"

namespace sentikit::eval {

double accuracy(std::span<const Sentiment> predicted, std::span<const Sentiment> gold) {
  require(predicted.size() == gold.size(), "accuracy: length mismatch");
  require(!gold.empty(), "accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += predicted[i] == gold[i];
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double roc_auc_binary(std::span<const double> scores, std::span<const bool> positives) {
  require(scores.size() == positives.size(), "auc: length mismatch");
  std::uint64_t pos = 0;
  for (bool p : positives) pos += p;
  const std::uint64_t neg = scores.size() - pos;
  require(pos > 0 && neg > 0, "auc: undefined without both positives and negatives");
  for (double s : scores) require(!std::isnan(s), "auc: NaN score");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the Mann-Whitney U: each positive in a tie group earns 2 per
  // negative strictly below plus 1 per negative in its own group.
  std::uint64_t twice_u = 0;
  std::uint64_t neg_below = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::uint64_t p = 0, q = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (positives[order[j]] ? p : q) += 1;
      ++j;
    }
    twice_u += p * (2 * neg_below + q);
    neg_below += q;
    i = j;
  }
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

Sentiment predict_label(const ScoreRow& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return sentiment_at(best);
}

EvalReport evaluate(std::span<const ScoreRow> scores, std::span<const Sentiment> gold) {
  require(scores.size() == gold.size(), "evaluate: length mismatch");
  require(!gold.empty(), "evaluate: empty input");
  EvalReport r;
  r.n = gold.size();
  std::vector<Sentiment> predicted;
  predicted.reserve(r.n);
  for (std::size_t i = 0; i < r.n; ++i) {
    for (double s : scores[i]) require(std::isfinite(s), "evaluate: non-finite score");
    predicted.push_back(predict_label(scores[i]));
    r.confusion[class_index(gold[i])][class_index(predicted.back())] += 1;
  }
  r.accuracy = accuracy(predicted, gold);

  std::vector<double> column(r.n);
  auto flags = std::make_unique<bool[]>(r.n);
  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < r.n; ++i) {
      column[i] = scores[i][c];
      flags[i] = class_index(gold[i]) == c;
      pos += flags[i];
    }
    if (pos == 0 || pos == r.n) {
      r.partial = true;
      continue;
    }
    r.auc_per_class[c] = roc_auc_binary(column, std::span<const bool>(flags.get(), r.n));
    sum += *r.auc_per_class[c];
    ++defined;
  }
  if (defined > 0) r.macro_auc = sum / static_cast<double>(defined);
  return r;
}

Json EvalReport::to_json() const {
  Json aucs = Json::array();
  for (const auto& a : auc_per_class) aucs.push_back(a ? Json(*a) : Json(nullptr));
  Json conf = Json::array();
  for (const auto& row : confusion) conf.push_back(row);
  return {{"accuracy", accuracy},
          {"auc_per_class", aucs},
          {"macro_auc", macro_auc ? Json(*macro_auc) : Json(nullptr)},
          {"partial", partial},
          {"confusion", conf},
          {"n", n},
          {"labels", {"Negative", "Positive", "Neutral"}}};
}

EvalReport EvalReport::from_json(const Json& obj) {
  EvalReport r;
  r.accuracy = obj.at("accuracy").get<double>();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const Json& a = obj.at("auc_per_class").at(c);
    if (!a.is_null()) r.auc_per_class[c] = a.get<double>();
  }
  if (!obj.at("macro_auc").is_null()) r.macro_auc = obj.at("macro_auc").get<double>();
  r.partial = obj.at("partial").get<bool>();
  for (std::size_t g = 0; g < kNumClasses; ++g) {
    for (std::size_t p = 0; p < kNumClasses; ++p) r.confusion[g][p] = obj.at("confusion").at(g).at(p).get<std::size_t>();
  }
  r.n = obj.at("n").get<std::size_t>();
  return r;
}

std::string format_table(std::span<const TableRow> rows) {
  std::size_t width = std::string_view("Algorithm").size();
  for (const auto& row : rows) width = std::max(width, algorithm_display_name(row.algorithm).size());
  auto pad = [&](std::string_view s) {
    std::string out(s);
    out.resize(width, ' ');
    return out;
  };
  std::string out = pad("Algorithm") + " | Accuracy | Averaged AUC\n";
  out += std::string(width, '-') + "-|----------|-------------\n";
  char buf[64];
  for (const auto& row : rows) {
    out += pad(algorithm_display_name(row.algorithm));
    std::snprintf(buf, sizeof buf, " | %8.3f | ", row.accuracy);
    out += buf;
    if (row.macro_auc) {
      std::snprintf(buf, sizeof buf, "%12.3f", *row.macro_auc);
      out += buf;
    } else {
      out += "         n/a";
    }
    out += '\n';
  }
  return out;
}

}  // namespace sentikit::eval
