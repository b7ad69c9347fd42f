#include "sentikit/pipeline/pipeline.hpp"

#include "sentikit/common/error.hpp"
#include "sentikit/corpus/split.hpp"
#include "sentikit/textproc/embeddings.hpp"

namespace sentikit::pipeline {

namespace {

enum SeedTag : std::uint64_t { kClassifierSeed = 1, kDevSplitSeed = 2, kEmbeddingSeed = 3, kTrainSeed = 4 };

std::uint64_t child_seed(std::uint64_t seed, SeedTag tag) { return numeric::Rng(seed).split(tag).next_u64(); }

neural::SequenceDataset to_dataset(const Featurizer& f, const corpus::LabeledCorpus& c) {
  neural::SequenceDataset d;
  for (const auto& item : c) {
    d.sequences.push_back(network_input(f, textproc::tokenize(item.comment.text)));
    d.labels.push_back(*item.label);
  }
  return d;
}

}  // namespace

void NeuralOptions::validate() const {
  train.validate();
  require(embedding_dim >= 1, "neural options: embedding_dim must be positive");
  require(dev_fraction > 0.0 && dev_fraction < 1.0, "neural options: dev_fraction must be in (0,1)");
}

Json NeuralOptions::to_json() const {
  Json j = {{"cnn", {{"filters", cnn.filters}, {"width", cnn.width}, {"dropout", cnn.dropout}}},
            {"lstm", {{"units", lstm.units}, {"sigmoid_outputs", lstm.sigmoid_outputs}}},
            {"train", train.to_json()},
            {"embedding_dim", embedding_dim},
            {"dev_fraction", dev_fraction}};
  j["embeddings"] = embeddings_path ? Json(embeddings_path->string()) : Json(nullptr);
  return j;
}

NeuralOptions NeuralOptions::from_json(const Json& obj) {
  NeuralOptions o;
  try {
    if (obj.contains("cnn")) {
      const Json& c = obj.at("cnn");
      o.cnn.filters = c.value("filters", o.cnn.filters);
      o.cnn.width = c.value("width", o.cnn.width);
      o.cnn.dropout = c.value("dropout", o.cnn.dropout);
    }
    if (obj.contains("lstm")) {
      const Json& l = obj.at("lstm");
      o.lstm.units = l.value("units", o.lstm.units);
      o.lstm.sigmoid_outputs = l.value("sigmoid_outputs", o.lstm.sigmoid_outputs);
    }
    if (obj.contains("train")) o.train = neural::TrainConfig::from_json(obj.at("train"));
    o.embedding_dim = obj.value("embedding_dim", o.embedding_dim);
    o.dev_fraction = obj.value("dev_fraction", o.dev_fraction);
    if (obj.contains("embeddings") && !obj.at("embeddings").is_null()) {
      o.embeddings_path = obj.at("embeddings").get<std::string>();
    }
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kInvalidArgument, std::string("neural options: ") + e.what());
  }
  o.validate();
  return o;
}

textproc::EncodedSequence network_input(const Featurizer& featurizer, const textproc::Tokens& doc) {
  if (!doc.empty()) return featurizer.sequence(doc);
  return featurizer.sequence(textproc::Tokens{textproc::kUnkToken});
}

TrainedModel::TrainedModel(Algorithm algorithm, Featurizer featurizer, classical::ClassifierModel model)
    : algorithm_(algorithm), featurizer_(std::move(featurizer)), classifier_(std::move(model)) {
  require(!is_neural(algorithm) && classifier_->algorithm() == algorithm, "model: algorithm mismatch");
}

TrainedModel::TrainedModel(Algorithm algorithm, Featurizer featurizer, neural::Network network,
                           neural::TrainingHistory history)
    : algorithm_(algorithm),
      featurizer_(std::move(featurizer)),
      network_(std::move(network)),
      history_(std::move(history)) {
  require(is_neural(algorithm), "model: algorithm mismatch");
}

eval::ScoreRow TrainedModel::score(const textproc::Tokens& doc) const {
  if (classifier_) return classifier_->predict_scores(featurizer_.features(algorithm_, classifier_->hyperparams(), doc));
  return network_->forward(network_input(featurizer_, doc));
}

eval::ScoreRow TrainedModel::score_text(const std::string& text) const { return score(textproc::tokenize(text)); }

std::vector<eval::ScoreRow> TrainedModel::score_corpus(const corpus::LabeledCorpus& corpus) const {
  std::vector<eval::ScoreRow> out;
  out.reserve(corpus.size());
  for (const auto& item : corpus) out.push_back(score_text(item.comment.text));
  return out;
}

eval::EvalReport TrainedModel::evaluate(const corpus::LabeledCorpus& gold) const {
  require(gold.all_labeled(), "evaluate: corpus has unlabeled items");
  return eval::evaluate(score_corpus(gold), gold.labels());
}

Json TrainedModel::to_json() const {
  Json j = {{"format", "sentikit-model"},
            {"version", 1},
            {"algorithm", algorithm_tag(algorithm_)},
            {"featurizer", featurizer_.to_json()}};
  if (classifier_) {
    j["classifier"] = classifier_->to_json();
  } else {
    j["network"] = network_->to_json(featurizer_.vocabulary().hash());
    j["history"] = history_->to_json();
  }
  return j;
}

TrainedModel TrainedModel::from_json(const Json& obj) {
  try {
    if (obj.at("format") != "sentikit-model" || obj.at("version") != 1) {
      throw_error(ErrorKind::kParse, "unsupported model file format");
    }
    const auto algorithm = parse_algorithm(obj.at("algorithm").get<std::string>());
    if (!algorithm) throw_error(ErrorKind::kParse, "model file names an unknown algorithm");
    Featurizer featurizer = Featurizer::from_json(obj.at("featurizer"));
    if (!is_neural(*algorithm)) {
      auto model = classical::ClassifierModel::from_json(obj.at("classifier"));
      return TrainedModel(*algorithm, std::move(featurizer), std::move(model));
    }
    auto net = neural::Network::from_json(obj.at("network"), featurizer.vocabulary().hash());
    const Json& h = obj.at("history");
    neural::TrainingHistory history;
    history.train_loss = h.at("train_loss").get<std::vector<double>>();
    history.dev_loss = h.at("dev_loss").get<std::vector<double>>();
    history.best_epoch = h.at("best_epoch").get<std::size_t>();
    history.stopped_early = h.at("stopped_early").get<bool>();
    return TrainedModel(*algorithm, std::move(featurizer), std::move(net), std::move(history));
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, std::string("malformed model file: ") + e.what());
  }
}

void TrainedModel::save(const std::filesystem::path& path) const {
  write_text_file_atomic(path, canonical_dump(to_json()) + "\n");
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) {
  Json parsed;
  try {
    parsed = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, "model file " + path.string() + ": " + e.what());
  }
  return from_json(parsed);
}

TrainedModel train_model(Algorithm algorithm, const corpus::LabeledCorpus& train, const TrainOptions& options) {
  require(!train.empty(), "train: empty training corpus");
  require(train.all_labeled(), "train: training corpus has unlabeled items");

  if (!is_neural(algorithm)) {
    classical::Hyperparams hp = options.hyperparams;
    hp.seed = child_seed(options.seed, kClassifierSeed);
    const auto docs = tokenize_corpus(train);
    Featurizer featurizer = Featurizer::fit(docs, options.featurizer);
    auto model = classical::fit_classifier(algorithm, hp, featurizer.matrix(algorithm, hp, docs), train.labels());
    return TrainedModel(algorithm, std::move(featurizer), std::move(model));
  }

  options.neural.validate();
  const corpus::Split parts =
      corpus::dev_split(train, options.neural.dev_fraction, child_seed(options.seed, kDevSplitSeed));
  Featurizer featurizer = Featurizer::fit(tokenize_corpus(parts.first), options.featurizer);
  const auto& vocab = featurizer.vocabulary();
  const std::uint64_t emb_seed = child_seed(options.seed, kEmbeddingSeed);
  textproc::EmbeddingTable table =
      options.neural.embeddings_path
          ? textproc::load_embeddings(*options.neural.embeddings_path, vocab, emb_seed, options.neural.embedding_dim)
          : textproc::random_embeddings(vocab, options.neural.embedding_dim, emb_seed);

  neural::NetworkSpec spec;
  spec.architecture = algorithm == Algorithm::kCnn ? neural::Architecture::kCnn : neural::Architecture::kLstm;
  spec.cnn = options.neural.cnn;
  spec.lstm = options.neural.lstm;
  spec.vocab_size = vocab.size();
  spec.embedding_dim = table.dimension();
  spec.max_len = options.featurizer.max_len;

  neural::TrainConfig cfg = options.neural.train;
  cfg.seed = child_seed(options.seed, kTrainSeed);
  const auto fit = to_dataset(featurizer, parts.first);
  const auto dev = to_dataset(featurizer, parts.second);
  auto trained = neural::train_network(spec, table.rows, fit, dev, cfg);
  return TrainedModel(algorithm, std::move(featurizer), std::move(trained.network), std::move(trained.history));
}

}  // namespace sentikit::pipeline
