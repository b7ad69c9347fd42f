#include "sentikit/classical/classifier.hpp"

#include <cmath>

#include "sentikit/common/error.hpp"

namespace sentikit::classical {

namespace {

Json tensor_json(const numeric::Tensor& t) {
  return {{"shape", t.shape()}, {"values", std::vector<double>(t.values().begin(), t.values().end())}};
}

numeric::Tensor tensor_from(const Json& j) {
  return numeric::Tensor(j.at("shape").get<std::vector<std::size_t>>(), j.at("values").get<std::vector<double>>());
}

template <std::size_t N>
std::array<double, N> array_from(const Json& j) {
  auto v = j.get<std::vector<double>>();
  require(v.size() == N, "array has the wrong length");
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

Json sparse_json(const SparseVector& v) {
  Json idx = Json::array();
  Json val = Json::array();
  for (const auto& e : v.entries()) {
    idx.push_back(e.index);
    val.push_back(e.value);
  }
  return {{"i", idx}, {"v", val}};
}

SparseVector sparse_from(const Json& j, std::size_t dim) {
  const auto idx = j.at("i").get<std::vector<std::uint32_t>>();
  const auto val = j.at("v").get<std::vector<double>>();
  require(idx.size() == val.size(), "sparse row index/value length mismatch");
  std::vector<SparseVector::Entry> entries;
  for (std::size_t k = 0; k < idx.size(); ++k) entries.push_back({idx[k], val[k]});
  return SparseVector::from_entries(dim, std::move(entries));
}

struct ParamsToJson {
  Json operator()(const NaiveBayesModel& m) const {
    return {{"log_prior", m.log_prior}, {"log_theta", tensor_json(m.log_theta)}};
  }
  Json operator()(const LogisticRegressionModel& m) const {
    return {{"weights", tensor_json(m.weights)}, {"bias", m.bias}};
  }
  Json operator()(const LinearSvmModel& m) const {
    return {{"weights", tensor_json(m.weights)}, {"bias", m.bias}};
  }
  Json operator()(const KnnModel& m) const {
    Json rows = Json::array();
    for (const auto& r : m.rows.row_list()) rows.push_back(sparse_json(r));
    Json labels = Json::array();
    for (Sentiment s : m.labels) labels.push_back(class_index(s));
    return {{"k", m.k}, {"rows", rows}, {"labels", labels}};
  }
  Json operator()(const RandomForestModel& m) const {
    Json trees = Json::array();
    for (const auto& t : m.trees) {
      Json nodes = Json::array();
      for (const auto& n : t.nodes) {
        nodes.push_back(Json::array({n.feature, n.threshold, n.left, n.right, class_index(n.label)}));
      }
      trees.push_back(nodes);
    }
    return {{"trees", trees}};
  }
};

ClassifierModel::Params params_from(Algorithm a, const Json& j, std::size_t dim) {
  switch (a) {
    case Algorithm::kNaiveBayes:
      return NaiveBayesModel{array_from<kNumClasses>(j.at("log_prior")), tensor_from(j.at("log_theta"))};
    case Algorithm::kLogisticRegression:
      return LogisticRegressionModel{tensor_from(j.at("weights")), array_from<kNumClasses>(j.at("bias"))};
    case Algorithm::kLinearSvm:
      return LinearSvmModel{tensor_from(j.at("weights")), array_from<kNumClasses>(j.at("bias"))};
    case Algorithm::kKnn: {
      KnnModel m;
      m.k = j.at("k").get<std::size_t>();
      m.rows = SparseRowMatrix(dim);
      for (const auto& r : j.at("rows")) m.rows.push_back(sparse_from(r, dim));
      for (const auto& l : j.at("labels")) {
        const auto c = l.get<std::size_t>();
        require(c < kNumClasses, "bad class index");
        m.labels.push_back(sentiment_at(c));
      }
      require(m.labels.size() == m.rows.rows(), "knn rows and labels differ in length");
      return m;
    }
    case Algorithm::kRandomForest: {
      RandomForestModel m;
      for (const auto& t : j.at("trees")) {
        DecisionTree tree;
        for (const auto& n : t) {
          TreeNode node{n.at(0).get<std::int32_t>(), n.at(1).get<double>(), n.at(2).get<std::int32_t>(),
                        n.at(3).get<std::int32_t>(), sentiment_at(n.at(4).get<std::size_t>())};
          tree.nodes.push_back(node);
        }
        require(!tree.nodes.empty(), "empty decision tree");
        const auto count = static_cast<std::int32_t>(tree.nodes.size());
        for (const auto& node : tree.nodes) {
          require(node.feature < 0 || (node.left > 0 && node.left < count && node.right > 0 && node.right < count &&
                                       static_cast<std::size_t>(node.feature) < dim),
                  "malformed decision tree");
        }
        m.trees.push_back(std::move(tree));
      }
      return m;
    }
    default:
      throw_error(ErrorKind::kParse, "not a classical algorithm: " + std::string(algorithm_tag(a)));
  }
}

}  // namespace

ClassifierModel::ClassifierModel(Algorithm algorithm, Hyperparams hyperparams, std::size_t dimension, Params params)
    : algorithm_(algorithm), hyperparams_(std::move(hyperparams)), dimension_(dimension), params_(std::move(params)) {}

Scores ClassifierModel::predict_scores(const SparseVector& x) const {
  Scores s = std::visit([&](const auto& m) { return m.scores(x); }, params_);
  for (double v : s) {
    if (!std::isfinite(v)) throw_error(ErrorKind::kNumeric, "non-finite score from " + std::string(algorithm_tag(algorithm_)));
  }
  return s;
}

Json ClassifierModel::to_json() const {
  return {{"format", "sentikit-classifier"},
          {"version", 1},
          {"algorithm", algorithm_tag(algorithm_)},
          {"hyperparams", classical::to_json(hyperparams_)},
          {"dimension", dimension_},
          {"params", std::visit(ParamsToJson{}, params_)}};
}

ClassifierModel ClassifierModel::from_json(const Json& obj) {
  try {
    if (obj.at("format") != "sentikit-classifier" || obj.at("version") != 1) {
      throw_error(ErrorKind::kParse, "unsupported classifier format");
    }
    auto algorithm = parse_algorithm(obj.at("algorithm").get<std::string>());
    if (!algorithm) throw_error(ErrorKind::kParse, "unknown algorithm tag");
    const auto dim = obj.at("dimension").get<std::size_t>();
    return ClassifierModel(*algorithm, hyperparams_from_json(obj.at("hyperparams")), dim,
                           params_from(*algorithm, obj.at("params"), dim));
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, std::string("malformed classifier: ") + e.what());
  } catch (const Error& e) {
    throw_error(ErrorKind::kParse, std::string("malformed classifier: ") + e.what());
  }
}

ClassifierModel fit_classifier(Algorithm algorithm, const Hyperparams& hp, const SparseRowMatrix& x,
                               std::span<const Sentiment> y) {
  hp.validate();
  check_training_set(x, y);
  const std::size_t dim = x.cols();
  switch (algorithm) {
    case Algorithm::kNaiveBayes:
      return ClassifierModel(algorithm, hp, dim, nb_fit(x, y, hp.nb_alpha));
    case Algorithm::kLogisticRegression:
      return ClassifierModel(algorithm, hp, dim, logreg_fit(x, y, hp.lr_l2, hp.lr_steps, hp.lr_rate, hp.seed));
    case Algorithm::kLinearSvm:
      return ClassifierModel(algorithm, hp, dim, svm_fit(x, y, hp.svm_c, hp.svm_epochs, hp.seed));
    case Algorithm::kKnn:
      return ClassifierModel(algorithm, hp, dim, knn_fit(x, y, hp.knn_k));
    case Algorithm::kRandomForest:
      return ClassifierModel(algorithm, hp, dim,
                             rf_fit(x, y, hp.rf_trees, hp.rf_max_depth, hp.rf_min_split, hp.seed));
    default:
      throw_error(ErrorKind::kInvalidArgument,
                  std::string(algorithm_tag(algorithm)) + " is not a classical algorithm");
  }
}

}  // namespace sentikit::classical
