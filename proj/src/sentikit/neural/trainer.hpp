#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sentikit/numeric/adam.hpp"
#include "sentikit/neural/network.hpp"

namespace sentikit::neural {

struct TrainConfig {
  std::size_t batch_size = 32;
  std::size_t max_epochs = 100;
  std::size_t patience = 5;
  numeric::AdamConfig adam;
  std::uint64_t seed = 0;
  /// Global gradient-norm clip; off unless set.
  std::optional<double> clip_norm;

  void validate() const;
  Json to_json() const;
  static TrainConfig from_json(const Json& obj);
};

/// Tracks the best dev loss; `observe` returns true once `patience`
/// consecutive epochs have failed to improve on it strictly.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);
  bool observe(std::size_t epoch, double loss);
  std::size_t best_epoch() const noexcept { return best_epoch_; }
  double best_loss() const noexcept { return best_loss_; }
  bool last_improved() const noexcept { return last_improved_; }

 private:
  std::size_t patience_;
  std::size_t best_epoch_ = 0;
  double best_loss_;
  std::size_t stale_ = 0;
  bool last_improved_ = false;
};

struct SequenceDataset {
  std::vector<textproc::EncodedSequence> sequences;
  std::vector<Sentiment> labels;
  std::size_t size() const noexcept { return sequences.size(); }
};

struct TrainingHistory {
  /// Epoch-end loss on the fit set, dropout off.
  std::vector<double> train_loss;
  std::vector<double> dev_loss;
  /// 1-based epoch whose parameters were restored.
  std::size_t best_epoch = 0;
  bool stopped_early = false;
  Json to_json() const;
};

struct TrainedNet {
  Network network;
  TrainingHistory history;
};

/// Called after every epoch with the 1-based epoch number.
using EpochCallback = std::function<void(std::size_t epoch, const TrainingHistory&)>;

/// Mini-batch Adam on mean BCE. Each epoch visits the fit set in a fresh
/// seeded order; the dev loss (dropout off) drives early stopping and the
/// parameters of the best dev epoch are restored at the end.
TrainedNet train_network(Network initial, const SequenceDataset& fit, const SequenceDataset& dev,
                         const TrainConfig& config, const EpochCallback& on_epoch = {});

/// Builds the network from `spec` and `embeddings` seeded from config.seed
/// and trains it.
TrainedNet train_network(const NetworkSpec& spec, const Tensor& embeddings, const SequenceDataset& fit,
                         const SequenceDataset& dev, const TrainConfig& config, const EpochCallback& on_epoch = {});

/// Mean BCE over a whole dataset, dropout off.
double dataset_loss(const Network& net, const SequenceDataset& data);

}  // namespace sentikit::neural
