#include "sentikit/neural/lstm.hpp"

#include <cmath>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/functions.hpp"

namespace sentikit::neural {

LstmState lstm_step(const LstmLayer& layer, std::span<const double> x, std::span<const double> h_prev,
                    std::span<const double> c_prev, LstmStepCache* cache) {
  const std::size_t hidden = layer.hidden();
  const std::size_t input = layer.input();
  require(x.size() == input && h_prev.size() == hidden && c_prev.size() == hidden, "lstm step: shape mismatch");
  const std::size_t width = 4 * hidden;

  std::vector<double> concat(input + hidden);
  std::copy(x.begin(), x.end(), concat.begin());
  std::copy(h_prev.begin(), h_prev.end(), concat.begin() + static_cast<std::ptrdiff_t>(input));

  std::vector<double> gates(layer.bias.values().begin(), layer.bias.values().end());
  for (std::size_t k = 0; k < concat.size(); ++k) {
    const double v = concat[k];
    if (v == 0.0) continue;
    const double* row = layer.kernel.data() + k * width;
#pragma omp simd
    for (std::size_t r = 0; r < width; ++r) gates[r] += v * row[r];
  }
  for (std::size_t j = 0; j < hidden; ++j) {
    gates[j] = numeric::sigmoid(gates[j]);
    gates[hidden + j] = numeric::sigmoid(gates[hidden + j]);
    gates[2 * hidden + j] = std::tanh(gates[2 * hidden + j]);
    gates[3 * hidden + j] = numeric::sigmoid(gates[3 * hidden + j]);
  }
  LstmState state{std::vector<double>(hidden), std::vector<double>(hidden)};
  std::vector<double> tanh_c(hidden);
  for (std::size_t j = 0; j < hidden; ++j) {
    state.c[j] = gates[hidden + j] * c_prev[j] + gates[j] * gates[2 * hidden + j];
    tanh_c[j] = std::tanh(state.c[j]);
    state.h[j] = gates[3 * hidden + j] * tanh_c[j];
  }
  if (cache) {
    cache->concat = std::move(concat);
    cache->gates = std::move(gates);
    cache->c_prev.assign(c_prev.begin(), c_prev.end());
    cache->c = state.c;
    cache->tanh_c = std::move(tanh_c);
  }
  return state;
}

Tensor lstm_forward(const LstmLayer& layer, const Tensor& inputs, std::vector<LstmStepCache>* caches) {
  require(inputs.shape().size() == 2 && inputs.dim(1) == layer.input(), "lstm: input width mismatch");
  const std::size_t steps = inputs.dim(0);
  const std::size_t hidden = layer.hidden();
  Tensor out({steps, hidden});
  if (caches) caches->assign(steps, {});
  LstmState state{std::vector<double>(hidden, 0.0), std::vector<double>(hidden, 0.0)};
  for (std::size_t t = 0; t < steps; ++t) {
    std::span<const double> x(inputs.data() + t * layer.input(), layer.input());
    state = lstm_step(layer, x, state.h, state.c, caches ? &(*caches)[t] : nullptr);
    std::copy(state.h.begin(), state.h.end(), out.data() + t * hidden);
  }
  return out;
}

void lstm_backward(const LstmLayer& layer, const std::vector<LstmStepCache>& caches, const Tensor& grad_hidden,
                   LstmLayer& grad, Tensor* grad_inputs) {
  const std::size_t steps = caches.size();
  const std::size_t hidden = layer.hidden();
  const std::size_t input = layer.input();
  const std::size_t width = 4 * hidden;
  require(grad_hidden.dim(0) == steps && grad_hidden.dim(1) == hidden, "lstm backward: shape mismatch");
  if (grad_inputs) *grad_inputs = Tensor({steps, input});

  std::vector<double> dh_next(hidden, 0.0);
  std::vector<double> dc_next(hidden, 0.0);
  std::vector<double> da(width);
  for (std::size_t t = steps; t-- > 0;) {
    const LstmStepCache& s = caches[t];
    const double* gh = grad_hidden.data() + t * hidden;
    for (std::size_t j = 0; j < hidden; ++j) {
      const double i = s.gates[j];
      const double f = s.gates[hidden + j];
      const double g = s.gates[2 * hidden + j];
      const double o = s.gates[3 * hidden + j];
      const double dh = gh[j] + dh_next[j];
      const double dc = dh * o * (1.0 - s.tanh_c[j] * s.tanh_c[j]) + dc_next[j];
      da[j] = dc * g * i * (1.0 - i);
      da[hidden + j] = dc * s.c_prev[j] * f * (1.0 - f);
      da[2 * hidden + j] = dc * i * (1.0 - g * g);
      da[3 * hidden + j] = dh * s.tanh_c[j] * o * (1.0 - o);
      dc_next[j] = dc * f;
    }
    for (std::size_t r = 0; r < width; ++r) grad.bias[r] += da[r];
    for (std::size_t k = 0; k < s.concat.size(); ++k) {
      const double* row = layer.kernel.data() + k * width;
      double* grow = grad.kernel.data() + k * width;
      const double v = s.concat[k];
      if (v != 0.0) {
#pragma omp simd
        for (std::size_t r = 0; r < width; ++r) grow[r] += v * da[r];
      }
      double sum = 0.0;
#pragma omp simd reduction(+ : sum)
      for (std::size_t r = 0; r < width; ++r) sum += row[r] * da[r];
      if (k < input) {
        if (grad_inputs) grad_inputs->at(t, k) = sum;
      } else {
        dh_next[k - input] = sum;
      }
    }
  }
}

}  // namespace sentikit::neural
