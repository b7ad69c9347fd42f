#pragma once

#include <span>
#include <vector>

#include "sentikit/numeric/tensor.hpp"

namespace sentikit::neural {

using numeric::Tensor;

/// One LSTM layer. `kernel` is (input + hidden, 4 * hidden) acting on the
/// concatenation [x_t, h_{t-1}]; the four column blocks are the input,
/// forget, candidate and output gates in that order.
struct LstmLayer {
  Tensor kernel;
  Tensor bias;

  LstmLayer() = default;
  LstmLayer(std::size_t input, std::size_t hidden) : kernel({input + hidden, 4 * hidden}), bias({4 * hidden}) {}
  std::size_t hidden() const { return bias.size() / 4; }
  std::size_t input() const { return kernel.dim(0) - hidden(); }
};

/// Everything one step needs for backpropagation.
struct LstmStepCache {
  std::vector<double> concat;  // [x_t, h_prev]
  std::vector<double> gates;   // activated i, f, g, o
  std::vector<double> c_prev;
  std::vector<double> c;
  std::vector<double> tanh_c;
};

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;
};

/// i, f, o = sigmoid(.), g = tanh(.); c = f * c_prev + i * g; h = o * tanh(c).
LstmState lstm_step(const LstmLayer& layer, std::span<const double> x, std::span<const double> h_prev,
                    std::span<const double> c_prev, LstmStepCache* cache = nullptr);

/// Runs the layer over a (T, input) sequence from zero state; returns the
/// (T, hidden) hidden states.
Tensor lstm_forward(const LstmLayer& layer, const Tensor& inputs, std::vector<LstmStepCache>* caches = nullptr);

/// Backpropagation through time. `grad_hidden` is dLoss/dh_t for every
/// step; parameter gradients accumulate into `grad`, and `grad_inputs`
/// (when non-null) is overwritten with dLoss/dx_t.
void lstm_backward(const LstmLayer& layer, const std::vector<LstmStepCache>& caches, const Tensor& grad_hidden,
                   LstmLayer& grad, Tensor* grad_inputs);

}  // namespace sentikit::neural
