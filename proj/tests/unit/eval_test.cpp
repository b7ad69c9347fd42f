#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numeric>

#include "sentikit/common/error.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/eval/cross_validate.hpp"
#include "sentikit/eval/metrics.hpp"
#include "sentikit/numeric/rng.hpp"

using namespace sentikit;
using namespace sentikit::eval;

namespace {

constexpr Sentiment N = Sentiment::kNegative;
constexpr Sentiment P = Sentiment::kPositive;
constexpr Sentiment U = Sentiment::kNeutral;

double auc(const std::vector<double>& s, const std::vector<int>& pos) {
  auto flags = std::make_unique<bool[]>(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) flags[i] = pos[i] != 0;
  return roc_auc_binary(s, std::span<const bool>(flags.get(), pos.size()));
}

double pairwise_auc(const std::vector<double>& s, const std::vector<int>& pos) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!pos[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (pos[j]) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

corpus::LabeledCorpus fold_corpus() {
  corpus::LabeledCorpus c;
  const char* words[3][3] = {{"sad", "bleak", "grim"}, {"glad", "proud", "joy"}, {"desk", "form", "train"}};
  numeric::Rng r(5);
  for (int i = 0; i < 30; ++i) {
    std::size_t k = i % 3;
    std::string text = std::string(words[k][r.below(3)]) + " " + words[k][r.below(3)];
    c.add({{"d" + std::to_string(100 + i), text}, sentiment_at(k)});
  }
  return c;
}

}  // namespace

TEST(Accuracy, Examples) {
  std::vector<Sentiment> a{N, P, N, N}, b{N, P, P, N};
  EXPECT_EQ(accuracy(a, a), 1.0);
  EXPECT_EQ(accuracy(a, b), 0.75);
  std::vector<Sentiment> gold;
  for (int i = 0; i < 72; ++i) gold.push_back(N);
  for (int i = 0; i < 85; ++i) gold.push_back(P);
  for (int i = 0; i < 143; ++i) gold.push_back(U);
  std::vector<Sentiment> majority(300, U);
  EXPECT_NEAR(accuracy(majority, gold), 0.4767, 5e-5);
  std::vector<Sentiment> empty;
  EXPECT_THROW(accuracy(empty, empty), Error);
  EXPECT_THROW(accuracy(a, std::vector<Sentiment>{N}), Error);
}

TEST(Auc, Examples) {
  EXPECT_EQ(auc({0.9, 0.8, 0.7, 0.1}, {1, 1, 0, 0}), 1.0);
  EXPECT_EQ(auc({0.5, 0.5}, {1, 0}), 0.5);
  EXPECT_EQ(auc({0.9, 0.4, 0.6, 0.2}, {1, 1, 0, 0}), 0.75);
  EXPECT_THROW(auc({0.1, 0.2}, {1, 1}), Error);
  EXPECT_THROW(auc({0.1, 0.2}, {0, 0}), Error);
}

TEST(Auc, PairwiseOracleExact) {
  numeric::Rng r(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 2 + r.below(40);
    std::vector<double> s(n);
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = r.below(3) == 0 ? static_cast<double>(r.below(4)) : r.uniform(-1, 1);
      pos[i] = static_cast<int>(r.below(2));
    }
    pos[0] = 1;
    pos[1] = 0;
    EXPECT_EQ(auc(s, pos), pairwise_auc(s, pos));
  }
}

TEST(Auc, MonotoneTransformInvariant) {
  numeric::Rng r(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + r.below(30);
    std::vector<double> s(n), affine(n), cubic(n);
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::round(r.uniform(-3, 3) * 4) / 4;
      affine[i] = 3 * s[i] + 1;
      cubic[i] = s[i] * s[i] * s[i];
      pos[i] = static_cast<int>(r.below(2));
    }
    pos[0] = 1;
    pos[1] = 0;
    EXPECT_EQ(auc(s, pos), auc(affine, pos));
    EXPECT_EQ(auc(s, pos), auc(cubic, pos));
  }
}

TEST(Evaluate, PerfectAndConstantScores) {
  std::vector<Sentiment> gold{N, P, U, U, P};
  std::vector<ScoreRow> perfect;
  for (Sentiment g : gold) {
    ScoreRow row{0.1, 0.1, 0.1};
    row[class_index(g)] = 0.9;
    perfect.push_back(row);
  }
  auto r = evaluate(perfect, gold);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.macro_auc, 1.0);
  EXPECT_FALSE(r.partial);
  std::vector<ScoreRow> flat(5, ScoreRow{0.3, 0.3, 0.3});
  auto f = evaluate(flat, gold);
  EXPECT_NEAR(f.accuracy, 0.2, 1e-15);
  EXPECT_EQ(f.macro_auc, 0.5);
}

TEST(Evaluate, MissingClassIsPartial) {
  std::vector<Sentiment> gold{N, P, N};
  std::vector<ScoreRow> s{{0.9, 0.1, 0.0}, {0.1, 0.9, 0.0}, {0.6, 0.5, 0.2}};
  auto r = evaluate(s, gold);
  EXPECT_TRUE(r.partial);
  EXPECT_FALSE(r.auc_per_class[2].has_value());
  EXPECT_EQ(r.macro_auc, 1.0);
}

TEST(Evaluate, RandomIdentities) {
  numeric::Rng r(100);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 3 + r.below(40);
    std::vector<Sentiment> gold(n);
    std::vector<ScoreRow> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = sentiment_at(i < 3 ? i : r.below(3));
      for (double& v : s[i]) v = r.below(5) == 0 ? 0.5 : r.uniform(0, 1);
    }
    auto rep = evaluate(s, gold);
    std::size_t total = 0, trace = 0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        total += rep.confusion[a][b];
        if (a == b) trace += rep.confusion[a][b];
      }
    EXPECT_EQ(total, n);
    EXPECT_NEAR(rep.accuracy, static_cast<double>(trace) / n, 1e-12);
    double mean = (*rep.auc_per_class[0] + *rep.auc_per_class[1] + *rep.auc_per_class[2]) / 3;
    EXPECT_NEAR(*rep.macro_auc, mean, 1e-12);

    // shuffling rows together leaves the report unchanged
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    r.shuffle(std::span<std::size_t>(order));
    std::vector<Sentiment> g2;
    std::vector<ScoreRow> s2;
    for (std::size_t i : order) {
      g2.push_back(gold[i]);
      s2.push_back(s[i]);
    }
    EXPECT_EQ(evaluate(s2, g2), rep);
    EXPECT_EQ(EvalReport::from_json(rep.to_json()), rep);
  }
}

TEST(Evaluate, ConstantScoresGiveNegativePrevalence) {
  numeric::Rng r(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 5 + r.below(30);
    std::vector<Sentiment> gold(n);
    std::size_t neg = 0;
    for (auto& g : gold) {
      g = sentiment_at(r.below(3));
      neg += g == N;
    }
    double c = r.uniform(-1, 1);
    std::vector<ScoreRow> s(n, ScoreRow{c, c, c});
    EXPECT_NEAR(evaluate(s, gold).accuracy, static_cast<double>(neg) / n, 1e-12);
  }
}

TEST(PredictLabel, TieOrder) {
  EXPECT_EQ(predict_label({0.2, 0.5, 0.5}), P);
  EXPECT_EQ(predict_label({0.5, 0.5, 0.5}), N);
}

TEST(Table, Shape) {
  std::vector<TableRow> rows{{Algorithm::kNaiveBayes, 0.5, 0.61234}, {Algorithm::kLstm, 0.85, std::nullopt}};
  auto t = format_table(rows);
  EXPECT_NE(t.find("Algorithm"), std::string::npos);
  EXPECT_NE(t.find("Averaged AUC"), std::string::npos);
  EXPECT_NE(t.find("Naive Bayes"), std::string::npos);
  EXPECT_NE(t.find("0.612"), std::string::npos);
  EXPECT_NE(t.find("Long Short-Term Memory (LSTM)"), std::string::npos);
}

TEST(CrossValidate, SingleConfigAndTies) {
  auto c = fold_corpus();
  CvConfig cfg;
  cfg.featurizer.min_df = 1;
  cfg.seed = 3;
  classical::Hyperparams hp;
  std::vector<classical::Hyperparams> one{hp};
  auto r1 = cross_validate(Algorithm::kLogisticRegression, one, c, cfg);
  EXPECT_EQ(r1.chosen, 0u);
  EXPECT_EQ(r1.configs[0].folds.size(), 5u);
  std::vector<classical::Hyperparams> two{hp, hp};
  auto r2 = cross_validate(Algorithm::kLogisticRegression, two, c, cfg);
  EXPECT_EQ(r2.chosen, 0u);
  EXPECT_EQ(r2.configs[0].mean_accuracy, r2.configs[1].mean_accuracy);
  std::vector<classical::Hyperparams> none;
  EXPECT_THROW(cross_validate(Algorithm::kLogisticRegression, none, c, cfg), Error);
}

TEST(CrossValidate, ChoosesBestMean) {
  auto c = fold_corpus();
  CvConfig cfg;
  cfg.featurizer.min_df = 1;
  auto grid = classical::default_grid(Algorithm::kKnn, {});
  auto r = cross_validate(Algorithm::kKnn, grid, c, cfg);
  for (const auto& cr : r.configs) {
    EXPECT_LE(cr.mean_accuracy, r.configs[r.chosen].mean_accuracy);
    double m = 0;
    for (const auto& f : cr.folds) m += f.accuracy;
    EXPECT_NEAR(cr.mean_accuracy, m / cr.folds.size(), 1e-12);
  }
  for (std::size_t i = 0; i < r.chosen; ++i) EXPECT_LT(r.configs[i].mean_accuracy, r.configs[r.chosen].mean_accuracy);
}

TEST(CrossValidate, FeaturesRefitPerFold) {
  auto c = fold_corpus();
  c.add({{"z999", "uniqueword sad"}, N});
  c.add({{"z998", "sad grim"}, N});
  CvConfig cfg;
  cfg.featurizer.min_df = 1;
  std::size_t folds_with_token_in_valid = 0;
  auto observer = [&](std::size_t, const corpus::Split& split, const pipeline::Featurizer& f) {
    bool in_valid = split.second.find("z999") != nullptr;
    bool known = f.vocabulary().find("uniqueword").has_value();
    EXPECT_NE(in_valid, known);
    folds_with_token_in_valid += in_valid;
  };
  std::vector<classical::Hyperparams> one{classical::Hyperparams{}};
  cross_validate(Algorithm::kLogisticRegression, one, c, cfg, observer);
  EXPECT_EQ(folds_with_token_in_valid, 1u);
}
