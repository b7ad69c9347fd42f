#pragma once

// Central-difference gradient checks shared by the unit suite and the
// acceptance binary. Each check draws one random point from `seed` and
// returns ||analytic - numeric|| / max(||analytic||, ||numeric||) over every
// checked coordinate.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sentikit/neural/layers.hpp"
#include "sentikit/neural/lstm.hpp"
#include "sentikit/neural/network.hpp"
#include "sentikit/numeric/rng.hpp"
#include "sentikit/textproc/vocabulary.hpp"

namespace gradcheck {

using sentikit::neural::Tensor;
using sentikit::numeric::Rng;

inline constexpr double kStep = 1e-5;

struct Accumulator {
  double diff = 0, an = 0, num = 0;
  void add(double a, double n) {
    diff += (a - n) * (a - n);
    an += a * a;
    num += n * n;
  }
  double relative() const {
    double denom = std::max(std::sqrt(an), std::sqrt(num));
    return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
  }
};

// perturbs values[i] in place and compares against analytic[i]
inline void probe(std::span<double> values, std::span<const double> analytic, const std::function<double()>& loss,
                  Accumulator& acc, const std::function<bool(std::size_t)>& skip = {}) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (skip && skip(i)) continue;
    const double old = values[i];
    values[i] = old + kStep;
    const double lp = loss();
    values[i] = old - kStep;
    const double lm = loss();
    values[i] = old;
    acc.add(analytic[i], (lp - lm) / (2 * kStep));
  }
}

inline void fill(Tensor& t, Rng& r, double scale = 1.0) {
  for (double& v : t.values()) v = r.uniform(-scale, scale);
}

inline std::vector<double> random_vector(std::size_t n, Rng& r) {
  std::vector<double> v(n);
  for (double& x : v) x = r.uniform(-1, 1);
  return v;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dense(std::uint64_t seed) {
  using sentikit::neural::DenseLayer;
  Rng r(seed);
  DenseLayer layer(6, 4);
  fill(layer.weight, r);
  fill(layer.bias, r);
  auto x = random_vector(6, r);
  auto proj = random_vector(4, r);
  auto loss = [&] {
    std::vector<double> y(4);
    layer.forward(x, y);
    return dot(y, proj);
  };
  DenseLayer grad(6, 4);
  std::vector<double> gx(6);
  layer.backward(x, proj, grad, gx);
  Accumulator acc;
  probe(layer.weight.values(), grad.weight.values(), loss, acc);
  probe(layer.bias.values(), grad.bias.values(), loss, acc);
  probe(x, gx, loss, acc);
  return acc.relative();
}

inline double conv1d(std::uint64_t seed) {
  using sentikit::neural::Conv1dLayer;
  Rng r(seed);
  Conv1dLayer layer(7, 3, 4);
  fill(layer.filters, r);
  fill(layer.bias, r);
  Tensor input({12, 3});
  fill(input, r);
  Tensor proj({6, 4});
  fill(proj, r);
  auto loss = [&] { return dot(layer.forward(input).values(), proj.values()); };
  Conv1dLayer grad(7, 3, 4);
  Tensor gin;
  layer.backward(input, proj, grad, &gin);
  Accumulator acc;
  probe(layer.filters.values(), grad.filters.values(), loss, acc);
  probe(layer.bias.values(), grad.bias.values(), loss, acc);
  probe(input.values(), gin.values(), loss, acc);
  return acc.relative();
}

inline double max_pool(std::uint64_t seed) {
  Rng r(seed);
  Tensor input({9, 5});
  fill(input, r);
  auto proj = random_vector(5, r);
  auto loss = [&] { return dot(sentikit::neural::global_max_pool(input).values, proj); };
  auto pooled = sentikit::neural::global_max_pool(input);
  Tensor g = sentikit::neural::global_max_pool_backward(pooled, proj, 9);
  Accumulator acc;
  probe(input.values(), g.values(), loss, acc);
  return acc.relative();
}

inline double dropout(std::uint64_t seed) {
  Rng r(seed);
  auto x = random_vector(40, r);
  auto proj = random_vector(40, r);
  const std::uint64_t mask_seed = r.next_u64();
  // a fresh generator per call reproduces the same mask
  auto loss = [&] {
    Rng m(mask_seed);
    return dot(sentikit::neural::dropout(x, 0.2, m, true), proj);
  };
  Rng m(mask_seed);
  std::vector<double> mask;
  sentikit::neural::dropout(x, 0.2, m, true, &mask);
  std::vector<double> g(40);
  for (std::size_t i = 0; i < 40; ++i) g[i] = proj[i] * mask[i];
  Accumulator acc;
  probe(x, g, loss, acc);
  return acc.relative();
}

// steps = 1 is a single LSTM step from zero state; larger values exercise BPTT
inline double lstm(std::uint64_t seed, std::size_t steps) {
  using sentikit::neural::LstmLayer;
  Rng r(seed);
  LstmLayer layer(4, 3);
  fill(layer.kernel, r, 0.8);
  fill(layer.bias, r, 0.5);
  Tensor input({steps, 4});
  fill(input, r);
  Tensor proj({steps, 3});
  fill(proj, r);
  auto loss = [&] { return dot(sentikit::neural::lstm_forward(layer, input).values(), proj.values()); };
  std::vector<sentikit::neural::LstmStepCache> caches;
  sentikit::neural::lstm_forward(layer, input, &caches);
  LstmLayer grad(4, 3);
  Tensor gin;
  sentikit::neural::lstm_backward(layer, caches, proj, grad, &gin);
  Accumulator acc;
  probe(layer.kernel.values(), grad.kernel.values(), loss, acc);
  probe(layer.bias.values(), grad.bias.values(), loss, acc);
  probe(input.values(), gin.values(), loss, acc);
  return acc.relative();
}

// Whole network, every parameter tensor, random values everywhere (nonzero
// biases keep PAD windows off the ReLU kink). The PAD embedding row is frozen
// by design and is not compared. With `with_dropout` the CNN masks are
// replayed from a fixed seed on every evaluation; `lstm_sigmoid` turns on the
// extra activation between stacked LSTM layers.
inline double network(std::uint64_t seed, sentikit::neural::Architecture arch, bool with_dropout = false,
                      bool lstm_sigmoid = false) {
  using namespace sentikit;
  Rng r(seed);
  neural::NetworkSpec spec;
  spec.architecture = arch;
  spec.vocab_size = 12;
  spec.embedding_dim = 5;
  spec.max_len = 20;
  spec.cnn.filters = {4, 3, 2};
  spec.lstm.units = {4, 3, 2};
  spec.lstm.sigmoid_outputs = lstm_sigmoid;
  Tensor emb({12, 5});
  fill(emb, r);
  for (std::size_t k = 0; k < 5; ++k) emb.at(textproc::kPadId, k) = 0.0;
  neural::Network net(spec, emb, r.next_u64());
  auto params = net.parameters();
  for (std::size_t p = 1; p < params.size(); ++p) fill(*params[p], r, 0.5);

  std::vector<textproc::EncodedSequence> seqs(3);
  for (auto& s : seqs) {
    s.ids.assign(20, textproc::kPadId);
    s.true_length = 1 + r.below(19);
    for (std::size_t t = 0; t < s.true_length; ++t) s.ids[t] = 1 + static_cast<std::uint32_t>(r.below(11));
  }
  std::vector<const textproc::EncodedSequence*> batch{&seqs[0], &seqs[1], &seqs[2]};
  std::vector<Sentiment> labels{Sentiment::kNegative, Sentiment::kPositive, Sentiment::kNeutral};
  const std::uint64_t mask_seed = r.next_u64();
  auto loss = [&](neural::Network* grad) {
    if (!with_dropout) return net.loss(batch, labels, nullptr, grad);
    Rng m(mask_seed);
    return net.loss(batch, labels, &m, grad);
  };
  auto g = net.zeros_like();
  loss(&g);
  auto grads = g.parameters();
  Accumulator acc;
  auto eval = [&] { return loss(nullptr); };
  probe(params[0]->values(), grads[0]->values(), eval, acc, [](std::size_t i) { return i < 5; });
  for (std::size_t p = 1; p < params.size(); ++p) probe(params[p]->values(), grads[p]->values(), eval, acc);
  return acc.relative();
}

}  // namespace gradcheck
