#pragma once

#include <variant>

#include "sentikit/classical/hyperparams.hpp"
#include "sentikit/classical/knn.hpp"
#include "sentikit/classical/linear_svm.hpp"
#include "sentikit/classical/logistic_regression.hpp"
#include "sentikit/classical/naive_bayes.hpp"
#include "sentikit/classical/random_forest.hpp"

namespace sentikit::classical {

/// A trained classical model behind one scoring contract. Score sources:
///   nb   normalized log-posteriors
///   lr   softmax probabilities
///   svm  one-vs-rest decision values
///   knn  summed neighbour similarities
///   rf   tree vote fractions
class ClassifierModel {
 public:
  using Params = std::variant<NaiveBayesModel, RandomForestModel, LinearSvmModel, LogisticRegressionModel, KnnModel>;

  ClassifierModel(Algorithm algorithm, Hyperparams hyperparams, std::size_t dimension, Params params);

  Algorithm algorithm() const noexcept { return algorithm_; }
  const Hyperparams& hyperparams() const noexcept { return hyperparams_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const Params& params() const noexcept { return params_; }

  Scores predict_scores(const SparseVector& x) const;

  /// Canonical JSON including the algorithm tag and hyperparameters. Doubles
  /// are written in shortest round-trip form so a reload scores identically.
  Json to_json() const;
  static ClassifierModel from_json(const Json& obj);

  friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;

 private:
  Algorithm algorithm_;
  Hyperparams hyperparams_;
  std::size_t dimension_;
  Params params_;
};

/// Dispatches to the algorithm's fit routine. X must be counts for nb unless
/// hp.nb_use_tfidf, TF-IDF otherwise; the caller featurizes accordingly.
ClassifierModel fit_classifier(Algorithm algorithm, const Hyperparams& hp, const SparseRowMatrix& x,
                               std::span<const Sentiment> y);

}  // namespace sentikit::classical
