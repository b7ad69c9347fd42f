#include "sentikit/pipeline/benchmark.hpp"

#include <algorithm>

#include "sentikit/common/error.hpp"

namespace sentikit::pipeline {

namespace {

enum SeedTag : std::uint64_t { kHoldoutSeed = 1, kFoldSeed = 2, kModelSeedBase = 16 };

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t tag) { return numeric::Rng(seed).split(tag).next_u64(); }

std::vector<std::string> ids_of(const corpus::LabeledCorpus& c) {
  std::vector<std::string> ids;
  for (const auto& item : c) ids.push_back(item.comment.id);
  return ids;
}

}  // namespace

void BenchmarkConfig::validate() const {
  require(test_fraction > 0.0 && test_fraction < 1.0, "benchmark: test_fraction must be in (0,1)");
  require(folds >= 2, "benchmark: folds must be at least 2");
  require(!algorithms.empty(), "benchmark: no algorithms selected");
  featurizer.validate();
  neural.validate();
  for (const auto& [algorithm, grid] : grids) {
    require(!is_neural(algorithm), "benchmark: grids apply to classical algorithms only");
    require(!grid.empty(), "benchmark: empty grid for " + std::string(algorithm_tag(algorithm)));
  }
}

BenchmarkConfig BenchmarkConfig::from_json(const Json& obj, BenchmarkConfig base) {
  BenchmarkConfig c = std::move(base);
  try {
    c.seed = obj.value("seed", c.seed);
    c.test_fraction = obj.value("test_fraction", c.test_fraction);
    c.folds = obj.value("folds", c.folds);
    c.select_by_auc = obj.value("select_by_auc", c.select_by_auc);
    if (obj.contains("featurizer")) c.featurizer = FeaturizerConfig::from_json(obj.at("featurizer"));
    if (obj.contains("neural")) c.neural = NeuralOptions::from_json(obj.at("neural"));
    if (obj.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& tag : obj.at("algorithms")) {
        auto a = parse_algorithm(tag.get<std::string>());
        require(a.has_value(), "benchmark: unknown algorithm " + tag.get<std::string>());
        c.algorithms.push_back(*a);
      }
    }
    if (obj.contains("grids")) {
      for (const auto& [tag, grid] : obj.at("grids").items()) {
        auto a = parse_algorithm(tag);
        require(a.has_value(), "benchmark: unknown algorithm " + tag);
        std::vector<classical::Hyperparams> hps;
        for (const auto& entry : grid) hps.push_back(classical::hyperparams_from_json(entry));
        c.grids[*a] = std::move(hps);
      }
    }
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kInvalidArgument, std::string("benchmark config: ") + e.what());
  }
  c.validate();
  return c;
}

BenchmarkReport run_benchmark(const corpus::LabeledCorpus& gold, const BenchmarkConfig& config) {
  config.validate();
  require(gold.all_labeled(), "benchmark: corpus has unlabeled items");
  auto log = [&](const std::string& line) {
    if (config.log) config.log(line);
  };

  BenchmarkReport report;
  report.seed = config.seed;
  const corpus::Split holdout = corpus::stratified_split(gold, config.test_fraction, child_seed(config.seed, kHoldoutSeed));
  report.train_ids = ids_of(holdout.first);
  report.test_ids = ids_of(holdout.second);
  log("split: " + std::to_string(holdout.first.size()) + " train, " + std::to_string(holdout.second.size()) +
      " test");

  std::vector<Algorithm> order = config.algorithms;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  for (Algorithm algorithm : order) {
    const std::string tag(algorithm_tag(algorithm));
    TrainOptions options;
    options.featurizer = config.featurizer;
    options.neural = config.neural;
    options.seed = child_seed(config.seed, kModelSeedBase + static_cast<std::uint64_t>(algorithm));

    BenchmarkRow row{algorithm, {}, Json::object(), std::nullopt};
    if (!is_neural(algorithm)) {
      auto it = config.grids.find(algorithm);
      const auto grid = it != config.grids.end() ? it->second : classical::default_grid(algorithm, {});
      eval::CvConfig cv_config;
      cv_config.folds = config.folds;
      cv_config.seed = child_seed(config.seed, kFoldSeed);
      cv_config.select_by_auc = config.select_by_auc;
      cv_config.featurizer = config.featurizer;
      row.cv = eval::cross_validate(algorithm, grid, holdout.first, cv_config);
      options.hyperparams = row.cv->chosen_hyperparams();
      row.selection = classical::relevant_json(options.hyperparams, algorithm);
      log(tag + ": selected " + canonical_dump(row.selection) + " (cv accuracy " +
          std::to_string(row.cv->configs[row.cv->chosen].mean_accuracy) + ")");
    }
    const TrainedModel model = train_model(algorithm, holdout.first, options);
    if (model.history()) {
      const auto& h = *model.history();
      row.selection = {{"epochs", h.dev_loss.size()}, {"best_epoch", h.best_epoch},
                       {"best_dev_loss", h.dev_loss.at(h.best_epoch - 1)}, {"stopped_early", h.stopped_early}};
      log(tag + ": trained " + std::to_string(h.dev_loss.size()) + " epochs, best " + std::to_string(h.best_epoch));
    }
    row.report = model.evaluate(holdout.second);
    log(tag + ": holdout accuracy " + std::to_string(row.report.accuracy));
    report.rows.push_back(std::move(row));
  }
  return report;
}

Json BenchmarkReport::to_json() const {
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r = {{"algorithm", algorithm_tag(row.algorithm)},
              {"name", algorithm_display_name(row.algorithm)},
              {"accuracy", row.report.accuracy},
              {"averaged_auc", row.report.macro_auc ? Json(*row.report.macro_auc) : Json(nullptr)},
              {"report", row.report.to_json()},
              {"selection", row.selection}};
    if (row.cv) r["cv"] = row.cv->to_json();
    rows_json.push_back(std::move(r));
  }
  return {{"format", "sentikit-benchmark"}, {"version", 1},        {"seed", seed},
          {"train_ids", train_ids},         {"test_ids", test_ids}, {"rows", rows_json}};
}

std::string BenchmarkReport::table() const {
  std::vector<eval::TableRow> table_rows;
  for (const auto& row : rows) table_rows.push_back({row.algorithm, row.report.accuracy, row.report.macro_auc});
  return eval::format_table(table_rows);
}

}  // namespace sentikit::pipeline
