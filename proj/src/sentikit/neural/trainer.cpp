#include "sentikit/neural/trainer.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "sentikit/common/error.hpp"

namespace sentikit::neural {

void TrainConfig::validate() const {
  require(batch_size >= 1, "train: batch_size must be at least 1");
  require(max_epochs >= 1, "train: max_epochs must be at least 1");
  require(patience >= 1, "train: patience must be at least 1");
  require(adam.learning_rate > 0.0, "train: learning rate must be positive");
  require(!clip_norm || *clip_norm > 0.0, "train: clip_norm must be positive");
}

Json TrainConfig::to_json() const {
  Json j = {{"batch_size", batch_size},
            {"max_epochs", max_epochs},
            {"patience", patience},
            {"learning_rate", adam.learning_rate},
            {"beta1", adam.beta1},
            {"beta2", adam.beta2},
            {"epsilon", adam.epsilon},
            {"seed", seed}};
  j["clip_norm"] = clip_norm ? Json(*clip_norm) : Json(nullptr);
  return j;
}

TrainConfig TrainConfig::from_json(const Json& obj) {
  TrainConfig c;
  c.batch_size = obj.value("batch_size", c.batch_size);
  c.max_epochs = obj.value("max_epochs", c.max_epochs);
  c.patience = obj.value("patience", c.patience);
  c.adam.learning_rate = obj.value("learning_rate", c.adam.learning_rate);
  c.adam.beta1 = obj.value("beta1", c.adam.beta1);
  c.adam.beta2 = obj.value("beta2", c.adam.beta2);
  c.adam.epsilon = obj.value("epsilon", c.adam.epsilon);
  c.seed = obj.value("seed", c.seed);
  if (obj.contains("clip_norm") && !obj.at("clip_norm").is_null()) c.clip_norm = obj.at("clip_norm").get<double>();
  c.validate();
  return c;
}

EarlyStopping::EarlyStopping(std::size_t patience)
    : patience_(patience), best_loss_(std::numeric_limits<double>::infinity()) {
  require(patience >= 1, "early stopping: patience must be at least 1");
}

bool EarlyStopping::observe(std::size_t epoch, double loss) {
  last_improved_ = loss < best_loss_;
  if (last_improved_) {
    best_loss_ = loss;
    best_epoch_ = epoch;
    stale_ = 0;
    return false;
  }
  return ++stale_ >= patience_;
}

Json TrainingHistory::to_json() const {
  return {{"train_loss", train_loss}, {"dev_loss", dev_loss}, {"best_epoch", best_epoch},
          {"stopped_early", stopped_early}};
}

double dataset_loss(const Network& net, const SequenceDataset& data) {
  require(data.size() > 0 && data.labels.size() == data.size(), "train: empty or malformed dataset");
  std::vector<const textproc::EncodedSequence*> ptrs;
  ptrs.reserve(data.size());
  for (const auto& s : data.sequences) ptrs.push_back(&s);
  return net.loss(ptrs, data.labels, nullptr, nullptr);
}

namespace {

void clip_gradients(std::vector<Tensor*>& grads, double max_norm) {
  double sq = 0.0;
  for (const Tensor* g : grads) {
    for (double v : g->values()) sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm) return;
  const double s = max_norm / norm;
  for (Tensor* g : grads) {
    for (double& v : g->values()) v *= s;
  }
}

}  // namespace

TrainedNet train_network(Network initial, const SequenceDataset& fit, const SequenceDataset& dev,
                         const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  require(fit.size() > 0 && fit.labels.size() == fit.size(), "train: fit set must be non-empty");
  require(dev.size() > 0 && dev.labels.size() == dev.size(), "train: dev set must be non-empty");

  const bool dev_is_fit = &fit == &dev;
  Network net = std::move(initial);
  Network grad = net.zeros_like();
  numeric::Adam adam(config.adam, net.parameters());
  auto grad_params = grad.parameters();
  std::vector<const Tensor*> grad_view(grad_params.begin(), grad_params.end());

  const numeric::Rng root(config.seed);
  numeric::Rng order_rng = root.split(10);
  numeric::Rng dropout_rng = root.split(11);

  TrainedNet out;
  EarlyStopping stopper(config.patience);
  Network best = net;
  std::vector<std::size_t> order(fit.size());
  std::vector<const textproc::EncodedSequence*> batch;
  std::vector<Sentiment> batch_labels;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    order_rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0, b = 0; start < order.size(); start += config.batch_size, ++b) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      batch.clear();
      batch_labels.clear();
      for (std::size_t i = start; i < stop; ++i) {
        batch.push_back(&fit.sequences[order[i]]);
        batch_labels.push_back(fit.labels[order[i]]);
      }
      for (Tensor* g : grad_params) g->fill(0.0);
      const double loss = net.loss(batch, batch_labels, &dropout_rng, &grad);
      if (!std::isfinite(loss)) {
        throw_error(ErrorKind::kNumeric, "train: non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                                             std::to_string(b + 1));
      }
      if (config.clip_norm) clip_gradients(grad_params, *config.clip_norm);
      adam.step(net.parameters(), grad_view);
    }
    const double train_loss = dataset_loss(net, fit);
    const double dev_loss = dev_is_fit ? train_loss : dataset_loss(net, dev);
    if (!std::isfinite(dev_loss) || !std::isfinite(train_loss)) {
      throw_error(ErrorKind::kNumeric, "train: non-finite epoch loss at epoch " + std::to_string(epoch));
    }
    out.history.train_loss.push_back(train_loss);
    out.history.dev_loss.push_back(dev_loss);
    const bool stop = stopper.observe(epoch, dev_loss);
    if (stopper.last_improved()) best = net;
    if (on_epoch) on_epoch(epoch, out.history);
    if (stop) {
      out.history.stopped_early = epoch < config.max_epochs;
      break;
    }
  }
  out.history.best_epoch = stopper.best_epoch();
  out.network = std::move(best);
  return out;
}

TrainedNet train_network(const NetworkSpec& spec, const Tensor& embeddings, const SequenceDataset& fit,
                         const SequenceDataset& dev, const TrainConfig& config, const EpochCallback& on_epoch) {
  const std::uint64_t init_seed = numeric::Rng(config.seed).split(12).next_u64();
  return train_network(Network(spec, embeddings, init_seed), fit, dev, config, on_epoch);
}

}  // namespace sentikit::neural
