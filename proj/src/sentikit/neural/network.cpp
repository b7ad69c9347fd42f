#include "sentikit/neural/network.hpp"

#include <cmath>
#include <sstream>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/functions.hpp"

namespace sentikit::neural {

namespace {

Json tensor_json(const Tensor& t) {
  return {{"shape", t.shape()}, {"values", std::vector<double>(t.values().begin(), t.values().end())}};
}

Tensor tensor_from(const Json& j) {
  return Tensor(j.at("shape").get<std::vector<std::size_t>>(), j.at("values").get<std::vector<double>>());
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << v;
  return out.str();
}

}  // namespace

double bce_with_logit(double logit, double target) noexcept {
  // -[y log s(z) + (1 - y) log(1 - s(z))] = softplus(z) - y z
  return numeric::softplus(logit) - target * logit;
}

void NetworkSpec::validate() const {
  require(vocab_size >= 2, "network: vocabulary must include PAD and UNK");
  require(embedding_dim >= 1, "network: embedding dimension must be positive");
  if (architecture == Architecture::kCnn) {
    require(!cnn.filters.empty() && cnn.width >= 1, "network: empty convolution stack");
    require(cnn.dropout >= 0.0 && cnn.dropout < 1.0, "network: dropout must be in [0,1)");
    require(max_len >= cnn.filters.size() * (cnn.width - 1) + 1,
            "network: max_len too short for the convolution stack");
  } else {
    require(!lstm.units.empty(), "network: empty LSTM stack");
  }
}

Json NetworkSpec::to_json() const {
  return {{"architecture", architecture == Architecture::kCnn ? "cnn" : "lstm"},
          {"cnn", {{"filters", cnn.filters}, {"width", cnn.width}, {"dropout", cnn.dropout}}},
          {"lstm", {{"units", lstm.units}, {"sigmoid_outputs", lstm.sigmoid_outputs}}},
          {"vocab_size", vocab_size},
          {"embedding_dim", embedding_dim},
          {"max_len", max_len}};
}

NetworkSpec NetworkSpec::from_json(const Json& obj) {
  NetworkSpec spec;
  const std::string arch = obj.at("architecture").get<std::string>();
  require(arch == "cnn" || arch == "lstm", "network: unknown architecture " + arch);
  spec.architecture = arch == "cnn" ? Architecture::kCnn : Architecture::kLstm;
  spec.cnn.filters = obj.at("cnn").at("filters").get<std::vector<std::size_t>>();
  spec.cnn.width = obj.at("cnn").at("width").get<std::size_t>();
  spec.cnn.dropout = obj.at("cnn").at("dropout").get<double>();
  spec.lstm.units = obj.at("lstm").at("units").get<std::vector<std::size_t>>();
  spec.lstm.sigmoid_outputs = obj.at("lstm").at("sigmoid_outputs").get<bool>();
  spec.vocab_size = obj.at("vocab_size").get<std::size_t>();
  spec.embedding_dim = obj.at("embedding_dim").get<std::size_t>();
  spec.max_len = obj.at("max_len").get<std::size_t>();
  spec.validate();
  return spec;
}

Network::Network(NetworkSpec spec, const Tensor& embeddings, std::uint64_t seed) : spec_(std::move(spec)) {
  spec_.validate();
  require(embeddings.shape() == std::vector<std::size_t>{spec_.vocab_size, spec_.embedding_dim},
          "network: embedding table does not match the spec");
  embedding_ = embeddings;
  for (std::size_t k = 0; k < spec_.embedding_dim; ++k) embedding_.at(textproc::kPadId, k) = 0.0;

  const numeric::Rng root(seed);
  std::size_t width = spec_.embedding_dim;
  if (spec_.architecture == Architecture::kCnn) {
    numeric::Rng rng = root.split(1);
    const std::size_t w = spec_.cnn.width;
    for (std::size_t out : spec_.cnn.filters) {
      Conv1dLayer layer(w, width, out);
      glorot_uniform(layer.filters, w * width, w * out, rng);
      convs_.push_back(std::move(layer));
      width = out;
    }
  } else {
    numeric::Rng rng = root.split(2);
    for (std::size_t hidden : spec_.lstm.units) {
      LstmLayer layer(width, hidden);
      const double limit = std::sqrt(6.0 / static_cast<double>(width + 4 * hidden));
      for (std::size_t k = 0; k < width + hidden; ++k) {
        for (std::size_t r = 0; r < 4 * hidden; ++r) {
          layer.kernel.at(k, r) = k < width ? rng.uniform(-limit, limit) : rng.uniform(-0.05, 0.05);
        }
      }
      lstms_.push_back(std::move(layer));
      width = hidden;
    }
  }
  numeric::Rng rng = root.split(3);
  output_ = DenseLayer(width, kNumClasses);
  glorot_uniform(output_.weight, width, kNumClasses, rng);
}

Network Network::zeros_like() const {
  Network z = *this;
  for (Tensor* t : z.parameters()) t->fill(0.0);
  return z;
}

std::vector<Tensor*> Network::parameters() {
  std::vector<Tensor*> out{&embedding_};
  for (auto& c : convs_) {
    out.push_back(&c.filters);
    out.push_back(&c.bias);
  }
  for (auto& l : lstms_) {
    out.push_back(&l.kernel);
    out.push_back(&l.bias);
  }
  out.push_back(&output_.weight);
  out.push_back(&output_.bias);
  return out;
}

std::vector<const Tensor*> Network::parameters() const {
  auto mutable_params = const_cast<Network*>(this)->parameters();
  return {mutable_params.begin(), mutable_params.end()};
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const Tensor* t : parameters()) n += t->size();
  return n;
}

bool operator==(const Network& a, const Network& b) {
  if (!(a.spec_ == b.spec_)) return false;
  const auto pa = a.parameters();
  const auto pb = b.parameters();
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!(*pa[i] == *pb[i])) return false;
  }
  return true;
}

void Network::check_sequence(const textproc::EncodedSequence& seq) const {
  require(seq.true_length >= 1, "network: sequence has no tokens");
  require(seq.true_length <= seq.ids.size(), "network: malformed sequence");
  if (spec_.architecture == Architecture::kCnn) {
    require(seq.ids.size() == spec_.max_len, "network: sequence length differs from the network's max_len");
  }
  for (std::size_t t = 0; t < seq.true_length; ++t) {
    require(seq.ids[t] < spec_.vocab_size, "network: token id outside the vocabulary");
  }
}

Tensor Network::embed(const textproc::EncodedSequence& seq, std::size_t steps) const {
  const std::size_t d = spec_.embedding_dim;
  Tensor x({steps, d});
  for (std::size_t t = 0; t < steps; ++t) {
    const std::uint32_t id = seq.ids[t];
    require(id < spec_.vocab_size, "network: token id outside the vocabulary");
    std::copy_n(embedding_.data() + static_cast<std::size_t>(id) * d, d, x.data() + t * d);
  }
  return x;
}

double Network::item_loss(const textproc::EncodedSequence& seq, Sentiment label, double scale,
                          numeric::Rng* dropout_rng, Network* grad) const {
  check_sequence(seq);
  const bool training = dropout_rng != nullptr;
  const std::size_t d = spec_.embedding_dim;

  std::vector<double> representation;
  // Per-architecture caches kept for the backward pass.
  std::vector<Tensor> conv_inputs;
  std::vector<Tensor> conv_pre;
  std::vector<std::vector<double>> masks;
  MaxPoolOutput pooled;
  std::vector<std::vector<LstmStepCache>> step_caches;
  std::size_t steps = 0;

  if (spec_.architecture == Architecture::kCnn) {
    steps = seq.ids.size();
    Tensor x = embed(seq, steps);
    for (const Conv1dLayer& layer : convs_) {
      Tensor pre = layer.forward(x);
      Tensor act = pre;
      relu_inplace(act.values());
      std::vector<double> mask;
      numeric::Rng dummy(0);
      auto dropped = dropout(act.values(), spec_.cnn.dropout, training ? *dropout_rng : dummy, training, &mask);
      conv_inputs.push_back(std::move(x));
      conv_pre.push_back(std::move(pre));
      masks.push_back(std::move(mask));
      x = Tensor(act.shape(), std::move(dropped));
    }
    pooled = global_max_pool(x);
    representation = pooled.values;
    conv_inputs.push_back(std::move(x));  // final activation, for its shape
  } else {
    steps = seq.true_length;
    Tensor x = embed(seq, steps);
    for (std::size_t l = 0; l < lstms_.size(); ++l) {
      std::vector<LstmStepCache> caches;
      Tensor h = lstm_forward(lstms_[l], x, grad ? &caches : nullptr);
      if (squash_after(l)) {
        for (double& v : h.values()) v = numeric::sigmoid(v);
      }
      conv_inputs.push_back(std::move(x));
      step_caches.push_back(std::move(caches));
      x = std::move(h);
    }
    const std::size_t width = x.dim(1);
    representation.assign(x.data() + (steps - 1) * width, x.data() + steps * width);
    conv_inputs.push_back(std::move(x));
  }

  std::array<double, kNumClasses> logits{};
  output_.forward(representation, logits);
  double total = 0.0;
  std::array<double, kNumClasses> grad_logits{};
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const double target = c == class_index(label) ? 1.0 : 0.0;
    total += bce_with_logit(logits[c], target);
    grad_logits[c] = (numeric::sigmoid(logits[c]) - target) * scale;
  }
  if (!grad) return total;

  std::vector<double> grad_rep(representation.size());
  output_.backward(representation, grad_logits, grad->output_, grad_rep);

  Tensor grad_x;
  if (spec_.architecture == Architecture::kCnn) {
    grad_x = global_max_pool_backward(pooled, grad_rep, conv_inputs.back().dim(0));
    for (std::size_t l = convs_.size(); l-- > 0;) {
      const auto& mask = masks[l];
      const Tensor& pre = conv_pre[l];
      for (std::size_t j = 0; j < grad_x.size(); ++j) grad_x[j] *= pre[j] > 0.0 ? mask[j] : 0.0;
      Tensor grad_in;
      convs_[l].backward(conv_inputs[l], grad_x, grad->convs_[l], &grad_in);
      grad_x = std::move(grad_in);
    }
  } else {
    const std::size_t width = conv_inputs.back().dim(1);
    grad_x = Tensor({steps, width});
    std::copy(grad_rep.begin(), grad_rep.end(), grad_x.data() + (steps - 1) * width);
    for (std::size_t l = lstms_.size(); l-- > 0;) {
      if (squash_after(l)) {
        const Tensor& out = conv_inputs[l + 1];
        for (std::size_t j = 0; j < grad_x.size(); ++j) grad_x[j] *= out[j] * (1.0 - out[j]);
      }
      Tensor grad_in;
      lstm_backward(lstms_[l], step_caches[l], grad_x, grad->lstms_[l], &grad_in);
      grad_x = std::move(grad_in);
    }
  }
  for (std::size_t t = 0; t < steps; ++t) {
    const std::uint32_t id = seq.ids[t];
    if (id == textproc::kPadId) continue;
    double* row = grad->embedding_.data() + static_cast<std::size_t>(id) * d;
    const double* g = grad_x.data() + t * d;
    for (std::size_t k = 0; k < d; ++k) row[k] += g[k];
  }
  return total;
}

double Network::loss(std::span<const textproc::EncodedSequence* const> batch, std::span<const Sentiment> labels,
                     numeric::Rng* dropout_rng, Network* grad) const {
  require(!batch.empty() && batch.size() == labels.size(), "network: bad batch");
  const double scale = 1.0 / (static_cast<double>(batch.size()) * kNumClasses);
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) total += item_loss(*batch[i], labels[i], scale, dropout_rng, grad);
  return total * scale;
}

ClassProbs Network::forward(const textproc::EncodedSequence& seq) const {
  check_sequence(seq);
  std::vector<double> representation;
  if (spec_.architecture == Architecture::kCnn) {
    Tensor x = embed(seq, seq.ids.size());
    for (const Conv1dLayer& layer : convs_) {
      x = layer.forward(x);
      relu_inplace(x.values());
    }
    representation = global_max_pool(x).values;
  } else {
    const std::size_t steps = seq.true_length;
    Tensor x = embed(seq, steps);
    for (std::size_t l = 0; l < lstms_.size(); ++l) {
      x = lstm_forward(lstms_[l], x);
      if (squash_after(l)) {
        for (double& v : x.values()) v = numeric::sigmoid(v);
      }
    }
    const std::size_t width = x.dim(1);
    representation.assign(x.data() + (steps - 1) * width, x.data() + steps * width);
  }
  std::array<double, kNumClasses> logits{};
  output_.forward(representation, logits);
  ClassProbs probs{};
  for (std::size_t c = 0; c < kNumClasses; ++c) probs[c] = numeric::sigmoid(logits[c]);
  return probs;
}

std::vector<ClassProbs> Network::forward_batch(std::span<const textproc::EncodedSequence> batch) const {
  std::vector<ClassProbs> out;
  out.reserve(batch.size());
  for (const auto& seq : batch) out.push_back(forward(seq));
  return out;
}

Json Network::to_json(std::uint64_t vocab_hash) const {
  Json params = Json::array();
  for (const Tensor* t : parameters()) params.push_back(tensor_json(*t));
  return {{"format", "sentikit-network"},
          {"version", 1},
          {"spec", spec_.to_json()},
          {"vocab_hash", hex64(vocab_hash)},
          {"params", params}};
}

Network Network::from_json(const Json& obj, std::uint64_t vocab_hash) {
  try {
    if (obj.at("format") != "sentikit-network" || obj.at("version") != 1) {
      throw_error(ErrorKind::kParse, "unsupported network format");
    }
    if (obj.at("vocab_hash").get<std::string>() != hex64(vocab_hash)) {
      throw_error(ErrorKind::kParse, "network was trained against a different vocabulary");
    }
    NetworkSpec spec = NetworkSpec::from_json(obj.at("spec"));
    Network net(spec, Tensor({spec.vocab_size, spec.embedding_dim}), 0);
    auto params = net.parameters();
    const Json& stored = obj.at("params");
    require(stored.size() == params.size(), "network: parameter count mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
      Tensor t = tensor_from(stored[i]);
      require(t.same_shape(*params[i]), "network: parameter shape mismatch at " + std::to_string(i));
      *params[i] = std::move(t);
    }
    return net;
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::kParse, std::string("malformed network: ") + e.what());
  } catch (const Error& e) {
    throw_error(ErrorKind::kParse, std::string("malformed network: ") + e.what());
  }
}

}  // namespace sentikit::neural
