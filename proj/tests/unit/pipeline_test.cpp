#include <gtest/gtest.h>

#include <filesystem>

#include "sentikit/common/error.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/pipeline/benchmark.hpp"
#include "sentikit/pipeline/pipeline.hpp"

using namespace sentikit;
using namespace sentikit::pipeline;

namespace {

const std::string kFixtures = SENTIKIT_FIXTURE_DIR;

corpus::LabeledCorpus toy() { return corpus::load_corpus(kFixtures + "/toy16.jsonl", corpus::Format::kJsonl); }

TrainOptions quick_options() {
  TrainOptions o;
  o.featurizer.min_df = 1;
  o.seed = 11;
  o.neural.embedding_dim = 8;
  o.neural.cnn.filters = {6, 6, 6};
  o.neural.lstm.units = {6, 6, 6};
  o.neural.train.max_epochs = 3;
  o.neural.dev_fraction = 0.25;
  return o;
}

}  // namespace

TEST(Featurizer, FitsOnTrainingDocsOnly) {
  std::vector<textproc::Tokens> docs{{"a", "b", "a"}, {"b", "c"}, {"a"}};
  FeaturizerConfig cfg;
  cfg.min_df = 2;
  auto f = Featurizer::fit(docs, cfg);
  EXPECT_EQ(f.vocabulary().size(), 4u);
  EXPECT_TRUE(f.vocabulary().find("a"));
  EXPECT_FALSE(f.vocabulary().find("c"));
  auto counts = f.counts({"a", "a", "c"});
  EXPECT_EQ(counts.dimension(), 4u);
  classical::Hyperparams hp;
  EXPECT_EQ(f.features(Algorithm::kNaiveBayes, hp, {"a", "a"}), f.counts({"a", "a"}));
  EXPECT_EQ(f.features(Algorithm::kLinearSvm, hp, {"a", "a"}), f.weighted({"a", "a"}));
  hp.nb_use_tfidf = true;
  EXPECT_EQ(f.features(Algorithm::kNaiveBayes, hp, {"a", "a"}), f.weighted({"a", "a"}));
  EXPECT_EQ(Featurizer::from_json(f.to_json()), f);
  cfg.min_df = 0;
  EXPECT_THROW(Featurizer::fit(docs, cfg), Error);
}

TEST(NetworkInput, EmptyDocumentIsUnknown) {
  auto f = Featurizer::fit({{"a"}}, FeaturizerConfig{1, 100, 20});
  auto seq = network_input(f, {});
  EXPECT_EQ(seq.true_length, 1u);
  EXPECT_EQ(seq.ids[0], textproc::kUnkId);
  auto seq2 = network_input(f, {"a", "zzz"});
  EXPECT_EQ(seq2.true_length, 2u);
  EXPECT_EQ(seq2.ids[1], textproc::kUnkId);
}

TEST(TrainModel, EveryAlgorithmSavesAndReloads) {
  auto data = toy();
  auto dir = std::filesystem::temp_directory_path() / "sentikit_pipeline_test";
  std::filesystem::create_directories(dir);
  for (Algorithm a : kAllAlgorithms) {
    auto model = train_model(a, data, quick_options());
    EXPECT_EQ(model.algorithm(), a);
    EXPECT_EQ(is_neural(a), model.network() != nullptr);
    EXPECT_EQ(is_neural(a), model.history().has_value());
    auto path = dir / (std::string(algorithm_tag(a)) + ".json");
    model.save(path);
    auto loaded = TrainedModel::load(path);
    EXPECT_EQ(loaded.score_corpus(data), model.score_corpus(data)) << algorithm_tag(a);
    EXPECT_EQ(loaded.score_text("completely unseen words"), model.score_text("completely unseen words"));
    auto report = model.evaluate(data);
    EXPECT_EQ(report.n, data.size());
    // deterministic given the seed
    auto again = train_model(a, data, quick_options());
    EXPECT_EQ(again.score_corpus(data), model.score_corpus(data)) << algorithm_tag(a);
  }
  std::filesystem::remove_all(dir);
}

TEST(TrainModel, RejectsUnlabeledCorpus) {
  auto data = toy().without_labels();
  EXPECT_THROW(train_model(Algorithm::kNaiveBayes, data, quick_options()), Error);
}

TEST(TrainModel, LoadRejectsGarbage) {
  auto path = std::filesystem::temp_directory_path() / "sentikit_bad_model.json";
  write_text_file_atomic(path, "{\"format\":\"nope\"}");
  EXPECT_THROW(TrainedModel::load(path), Error);
  write_text_file_atomic(path, "not json");
  EXPECT_THROW(TrainedModel::load(path), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(TrainedModel::load(path), Error);
}

TEST(BenchmarkConfig, FromJsonKeepsBase) {
  BenchmarkConfig base;
  base.seed = 9;
  auto c = BenchmarkConfig::from_json(Json::parse(R"({"folds":3,"algorithms":["lr","nb"]})"), base);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.folds, 3u);
  ASSERT_EQ(c.algorithms.size(), 2u);
  EXPECT_EQ(c.algorithms[0], Algorithm::kLogisticRegression);
  EXPECT_THROW(BenchmarkConfig::from_json(Json::parse(R"({"algorithms":["xgb"]})"), base), Error);
  EXPECT_THROW(BenchmarkConfig::from_json(Json::parse(R"({"folds":1})"), base), Error);
  EXPECT_THROW(BenchmarkConfig::from_json(Json::parse(R"({"grids":{"cnn":[{}]}})"), base), Error);
  EXPECT_THROW(BenchmarkConfig::from_json(Json::parse(R"({"test_fraction":"x"})"), base), Error);
}

TEST(Benchmark, ClassicalSubsetShape) {
  auto gold = corpus::load_corpus(kFixtures + "/synthetic300.jsonl", corpus::Format::kJsonl);
  BenchmarkConfig cfg;
  cfg.seed = 3;
  cfg.algorithms = {Algorithm::kLogisticRegression, Algorithm::kNaiveBayes};
  cfg.grids[Algorithm::kLogisticRegression] = {classical::Hyperparams{}};
  auto report = run_benchmark(gold, cfg);
  EXPECT_EQ(report.train_ids.size() + report.test_ids.size(), 300u);
  EXPECT_EQ(report.test_ids.size(), 60u);
  ASSERT_EQ(report.rows.size(), 2u);
  // rows follow report order, not request order
  EXPECT_EQ(report.rows[0].algorithm, Algorithm::kNaiveBayes);
  EXPECT_EQ(report.rows[1].algorithm, Algorithm::kLogisticRegression);
  EXPECT_EQ(report.rows[0].cv->configs.size(), classical::default_grid(Algorithm::kNaiveBayes, {}).size());
  EXPECT_EQ(report.rows[1].cv->configs.size(), 1u);
  for (const auto& row : report.rows) EXPECT_EQ(row.report.n, 60u);
  auto j = report.to_json();
  EXPECT_EQ(j.at("rows").size(), 2u);
  EXPECT_NE(report.table().find("Logistic"), std::string::npos);
  EXPECT_EQ(canonical_dump(run_benchmark(gold, cfg).to_json()), canonical_dump(j));
}
