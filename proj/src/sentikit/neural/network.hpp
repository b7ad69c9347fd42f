#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sentikit/common/json_io.hpp"
#include "sentikit/corpus/sentiment.hpp"
#include "sentikit/neural/layers.hpp"
#include "sentikit/neural/lstm.hpp"
#include "sentikit/textproc/sequence.hpp"

namespace sentikit::neural {

enum class Architecture { kCnn, kLstm };

struct CnnSpec {
  std::vector<std::size_t> filters{128, 64, 32};
  std::size_t width = 7;
  double dropout = 0.2;
  friend bool operator==(const CnnSpec&, const CnnSpec&) = default;
};

struct LstmSpec {
  std::vector<std::size_t> units{128, 64, 32};
  /// Extra elementwise sigmoid on the hidden-state sequence between stacked
  /// layers. Off by default.
  bool sigmoid_outputs = false;
  friend bool operator==(const LstmSpec&, const LstmSpec&) = default;
};

struct NetworkSpec {
  Architecture architecture = Architecture::kCnn;
  CnnSpec cnn;
  LstmSpec lstm;
  std::size_t vocab_size = 0;
  std::size_t embedding_dim = 0;
  std::size_t max_len = textproc::kDefaultMaxLength;

  void validate() const;
  Json to_json() const;
  static NetworkSpec from_json(const Json& obj);
  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

using ClassProbs = std::array<double, kNumClasses>;

/// Embedding table, then either (conv -> ReLU -> dropout) x N followed by a
/// global max pool, or N stacked LSTM layers read at the last real token;
/// then a dense layer to three logits and an elementwise sigmoid.
///
/// Row PAD of the embedding table is held at zero: it never receives a
/// gradient.
class Network {
 public:
  Network() = default;

  /// Glorot-uniform dense and convolution weights, input-to-hidden LSTM
  /// weights likewise, recurrent weights uniform in [-0.05, 0.05], zero
  /// biases. `embeddings` must be (vocab_size, embedding_dim).
  Network(NetworkSpec spec, const Tensor& embeddings, std::uint64_t seed);

  /// Same structure with every parameter zero; used as a gradient buffer.
  Network zeros_like() const;

  const NetworkSpec& spec() const noexcept { return spec_; }

  /// Fixed order: embedding, per-layer (weights, bias), output (weight, bias).
  std::vector<Tensor*> parameters();
  std::vector<const Tensor*> parameters() const;
  std::size_t parameter_count() const;

  /// Inference (dropout off).
  ClassProbs forward(const textproc::EncodedSequence& seq) const;
  std::vector<ClassProbs> forward_batch(std::span<const textproc::EncodedSequence> batch) const;

  /// Mean binary cross-entropy over items and the three one-hot targets.
  /// Dropout is active iff `dropout_rng` is non-null. When `grad` is
  /// non-null (a zeros_like buffer) gradients are accumulated into it.
  double loss(std::span<const textproc::EncodedSequence* const> batch, std::span<const Sentiment> labels,
              numeric::Rng* dropout_rng, Network* grad) const;

  Json to_json(std::uint64_t vocab_hash) const;
  /// Rejects files whose recorded vocabulary hash differs from `vocab_hash`.
  static Network from_json(const Json& obj, std::uint64_t vocab_hash);

  const Tensor& embedding() const noexcept { return embedding_; }
  const std::vector<Conv1dLayer>& conv_layers() const noexcept { return convs_; }
  const std::vector<LstmLayer>& lstm_layers() const noexcept { return lstms_; }
  const DenseLayer& output_layer() const noexcept { return output_; }
  DenseLayer& output_layer() noexcept { return output_; }

  friend bool operator==(const Network& a, const Network& b);

 private:
  double item_loss(const textproc::EncodedSequence& seq, Sentiment label, double scale, numeric::Rng* dropout_rng,
                   Network* grad) const;
  Tensor embed(const textproc::EncodedSequence& seq, std::size_t steps) const;
  void check_sequence(const textproc::EncodedSequence& seq) const;
  // the last layer feeds the sigmoid head directly
  bool squash_after(std::size_t layer) const { return spec_.lstm.sigmoid_outputs && layer + 1 < lstms_.size(); }

  NetworkSpec spec_;
  Tensor embedding_;
  std::vector<Conv1dLayer> convs_;
  std::vector<LstmLayer> lstms_;
  DenseLayer output_;
};

/// Binary cross-entropy of sigmoid(logit) against a 0/1 target, computed
/// from the logit for stability.
double bce_with_logit(double logit, double target) noexcept;

}  // namespace sentikit::neural
