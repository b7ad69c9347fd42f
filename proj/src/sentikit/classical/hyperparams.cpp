#include "sentikit/classical/hyperparams.hpp"

#include "sentikit/common/error.hpp"

namespace sentikit {

std::string_view algorithm_tag(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kNaiveBayes: return "nb";
    case Algorithm::kRandomForest: return "rf";
    case Algorithm::kLinearSvm: return "svm";
    case Algorithm::kLogisticRegression: return "lr";
    case Algorithm::kKnn: return "knn";
    case Algorithm::kCnn: return "cnn";
    case Algorithm::kLstm: return "lstm";
  }
  return "?";
}

std::string_view algorithm_display_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kNaiveBayes: return "Naive Bayes";
    case Algorithm::kRandomForest: return "Random Forest";
    case Algorithm::kLinearSvm: return "Support Vector Machine";
    case Algorithm::kLogisticRegression: return "Logistic Regression";
    case Algorithm::kKnn: return "K-Nearest Neighbour";
    case Algorithm::kCnn: return "Convolutional Neural Network (CNN)";
    case Algorithm::kLstm: return "Long Short-Term Memory (LSTM)";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view tag) noexcept {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_tag(a) == tag) return a;
  }
  return std::nullopt;
}

}  // namespace sentikit

namespace sentikit::classical {

void Hyperparams::validate() const {
  require(nb_alpha > 0.0, "nb_alpha must be positive");
  require(lr_l2 >= 0.0, "lr_l2 must be non-negative");
  require(lr_rate > 0.0, "lr_rate must be positive");
  require(svm_c > 0.0, "svm_c must be positive");
  require(knn_k >= 1 && knn_k % 2 == 1, "knn_k must be an odd integer >= 1");
  require(rf_trees >= 1, "rf_trees must be at least 1");
  require(!rf_max_depth || *rf_max_depth >= 1, "rf_max_depth must be at least 1");
  require(rf_min_split >= 2, "rf_min_split must be at least 2");
}

Json to_json(const Hyperparams& hp) {
  return {{"nb_alpha", hp.nb_alpha},
          {"nb_use_tfidf", hp.nb_use_tfidf},
          {"lr_l2", hp.lr_l2},
          {"lr_steps", hp.lr_steps},
          {"lr_rate", hp.lr_rate},
          {"svm_c", hp.svm_c},
          {"svm_epochs", hp.svm_epochs},
          {"knn_k", hp.knn_k},
          {"rf_trees", hp.rf_trees},
          {"rf_max_depth", hp.rf_max_depth ? Json(*hp.rf_max_depth) : Json(nullptr)},
          {"rf_min_split", hp.rf_min_split},
          {"seed", hp.seed}};
}

Hyperparams hyperparams_from_json(const Json& obj, Hyperparams hp) {
  if (!obj.is_object()) throw_error(ErrorKind::kParse, "hyperparameters must be a JSON object");
  try {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const std::string& key = it.key();
      const Json& v = it.value();
      if (key == "nb_alpha") hp.nb_alpha = v.get<double>();
      else if (key == "nb_use_tfidf") hp.nb_use_tfidf = v.get<bool>();
      else if (key == "lr_l2") hp.lr_l2 = v.get<double>();
      else if (key == "lr_steps") hp.lr_steps = v.get<std::size_t>();
      else if (key == "lr_rate") hp.lr_rate = v.get<double>();
      else if (key == "svm_c") hp.svm_c = v.get<double>();
      else if (key == "svm_epochs") hp.svm_epochs = v.get<std::size_t>();
      else if (key == "knn_k") hp.knn_k = v.get<std::size_t>();
      else if (key == "rf_trees") hp.rf_trees = v.get<std::size_t>();
      else if (key == "rf_max_depth") hp.rf_max_depth = v.is_null() ? std::nullopt : std::optional(v.get<std::size_t>());
      else if (key == "rf_min_split") hp.rf_min_split = v.get<std::size_t>();
      else if (key == "seed") hp.seed = v.get<std::uint64_t>();
      else throw_error(ErrorKind::kParse, "unknown hyperparameter \"" + key + "\"");
    }
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, std::string("bad hyperparameter value: ") + e.what());
  }
  hp.validate();
  return hp;
}

Json relevant_json(const Hyperparams& hp, Algorithm algorithm) {
  const Json all = to_json(hp);
  auto pick = [&](std::initializer_list<const char*> keys) {
    Json out = Json::object();
    for (const char* k : keys) out[k] = all.at(k);
    return out;
  };
  switch (algorithm) {
    case Algorithm::kNaiveBayes: return pick({"nb_alpha", "nb_use_tfidf"});
    case Algorithm::kLogisticRegression: return pick({"lr_l2", "lr_steps", "lr_rate"});
    case Algorithm::kLinearSvm: return pick({"svm_c", "svm_epochs"});
    case Algorithm::kKnn: return pick({"knn_k"});
    case Algorithm::kRandomForest: return pick({"rf_trees", "rf_max_depth", "rf_min_split"});
    default: return Json::object();
  }
}

std::vector<Hyperparams> default_grid(Algorithm algorithm, const Hyperparams& base) {
  std::vector<Hyperparams> grid;
  auto with = [&](auto&& set) {
    Hyperparams hp = base;
    set(hp);
    grid.push_back(hp);
  };
  switch (algorithm) {
    case Algorithm::kNaiveBayes:
      for (double a : {0.1, 0.5, 1.0}) with([&](Hyperparams& hp) { hp.nb_alpha = a; });
      break;
    case Algorithm::kLogisticRegression:
      for (double l2 : {1e-3, 1e-2, 1e-1}) with([&](Hyperparams& hp) { hp.lr_l2 = l2; });
      break;
    case Algorithm::kLinearSvm:
      for (double c : {0.1, 1.0, 10.0}) with([&](Hyperparams& hp) { hp.svm_c = c; });
      break;
    case Algorithm::kKnn:
      for (std::size_t k : {3, 5, 7, 11}) with([&](Hyperparams& hp) { hp.knn_k = k; });
      break;
    case Algorithm::kRandomForest:
      for (std::size_t trees : {100, 200}) {
        for (std::optional<std::size_t> depth : {std::optional<std::size_t>{}, std::optional<std::size_t>{16}}) {
          with([&](Hyperparams& hp) {
            hp.rf_trees = trees;
            hp.rf_max_depth = depth;
          });
        }
      }
      break;
    default:
      throw_error(ErrorKind::kInvalidArgument, "no classical grid for " + std::string(algorithm_tag(algorithm)));
  }
  return grid;
}

}  // namespace sentikit::classical
