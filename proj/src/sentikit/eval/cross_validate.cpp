#include "sentikit/eval/cross_validate.hpp"

#include "sentikit/classical/classifier.hpp"
#include "sentikit/common/error.hpp"

namespace sentikit::eval {

CvResult cross_validate(Algorithm algorithm, std::span<const classical::Hyperparams> grid,
                        const corpus::LabeledCorpus& corpus, const CvConfig& config, const FoldObserver& observer) {
  require(!is_neural(algorithm), "cv: only classical algorithms are cross-validated");
  require(!grid.empty(), "cv: empty grid");
  require(corpus.all_labeled(), "cv: corpus has unlabeled items");

  CvResult result{algorithm, {}, 0};
  for (const auto& hp : grid) {
    hp.validate();
    result.configs.push_back({hp, {}, 0.0, std::nullopt});
  }

  const auto folds = corpus::kfold(corpus, config.folds, config.seed);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const corpus::Split& split = folds[f];
    const auto train_docs = pipeline::tokenize_corpus(split.first);
    const auto valid_docs = pipeline::tokenize_corpus(split.second);
    const auto featurizer = pipeline::Featurizer::fit(train_docs, config.featurizer);
    if (observer) observer(f, split, featurizer);
    const auto train_labels = split.first.labels();
    const auto valid_labels = split.second.labels();
    for (auto& cfg : result.configs) {
      const auto x = featurizer.matrix(algorithm, cfg.hyperparams, train_docs);
      const auto model = classical::fit_classifier(algorithm, cfg.hyperparams, x, train_labels);
      std::vector<ScoreRow> scores;
      scores.reserve(valid_docs.size());
      for (const auto& doc : valid_docs) {
        scores.push_back(model.predict_scores(featurizer.features(algorithm, cfg.hyperparams, doc)));
      }
      const EvalReport report = evaluate(scores, valid_labels);
      cfg.folds.push_back({report.accuracy, report.macro_auc});
    }
  }

  for (auto& cfg : result.configs) {
    double acc = 0.0, auc = 0.0;
    std::size_t auc_folds = 0;
    for (const auto& fs : cfg.folds) {
      acc += fs.accuracy;
      if (fs.macro_auc) {
        auc += *fs.macro_auc;
        ++auc_folds;
      }
    }
    cfg.mean_accuracy = acc / static_cast<double>(cfg.folds.size());
    if (auc_folds > 0) cfg.mean_macro_auc = auc / static_cast<double>(auc_folds);
  }

  auto key = [&](const ConfigResult& c) {
    if (config.select_by_auc) return c.mean_macro_auc.value_or(-1.0);
    return c.mean_accuracy;
  };
  for (std::size_t i = 1; i < result.configs.size(); ++i) {
    if (key(result.configs[i]) > key(result.configs[result.chosen])) result.chosen = i;
  }
  return result;
}

Json CvResult::to_json() const {
  Json cfgs = Json::array();
  for (const auto& c : configs) {
    Json folds_json = Json::array();
    for (const auto& f : c.folds) {
      folds_json.push_back({{"accuracy", f.accuracy}, {"macro_auc", f.macro_auc ? Json(*f.macro_auc) : Json(nullptr)}});
    }
    cfgs.push_back({{"hyperparams", classical::relevant_json(c.hyperparams, algorithm)},
                    {"mean_accuracy", c.mean_accuracy},
                    {"mean_macro_auc", c.mean_macro_auc ? Json(*c.mean_macro_auc) : Json(nullptr)},
                    {"folds", folds_json}});
  }
  return {{"algorithm", algorithm_tag(algorithm)},
          {"configs", cfgs},
          {"chosen", chosen},
          {"chosen_hyperparams", classical::relevant_json(chosen_hyperparams(), algorithm)}};
}

}  // namespace sentikit::eval
