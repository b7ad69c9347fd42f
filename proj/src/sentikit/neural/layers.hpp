#pragma once

#include <span>
#include <vector>

#include "sentikit/numeric/rng.hpp"
#include "sentikit/numeric/tensor.hpp"

namespace sentikit::neural {

using numeric::Tensor;

/// y = W x + b with W stored (out, in).
struct DenseLayer {
  Tensor weight;
  Tensor bias;

  DenseLayer() = default;
  DenseLayer(std::size_t in, std::size_t out) : weight({out, in}), bias({out}) {}
  std::size_t in() const { return weight.dim(1); }
  std::size_t out() const { return weight.dim(0); }

  void forward(std::span<const double> x, std::span<double> y) const;
  /// Accumulates parameter gradients into `grad`; writes (not accumulates)
  /// the input gradient when `grad_x` is non-empty.
  void backward(std::span<const double> x, std::span<const double> grad_y, DenseLayer& grad,
                std::span<double> grad_x) const;
};

/// Valid 1-D cross-correlation over time. Input is (L, C_in) row-major,
/// filters are (width, C_in, C_out), output is (L - width + 1, C_out):
///   out[t][o] = bias[o] + sum_{k, i} in[t + k][i] * filters[k][i][o].
struct Conv1dLayer {
  Tensor filters;
  Tensor bias;

  Conv1dLayer() = default;
  Conv1dLayer(std::size_t width, std::size_t in_channels, std::size_t out_channels)
      : filters({width, in_channels, out_channels}), bias({out_channels}) {}
  std::size_t width() const { return filters.dim(0); }
  std::size_t in_channels() const { return filters.dim(1); }
  std::size_t out_channels() const { return filters.dim(2); }

  Tensor forward(const Tensor& input) const;
  /// Accumulates filter and bias gradients into `grad`. When `grad_input` is
  /// non-null it is overwritten with the input gradient.
  void backward(const Tensor& input, const Tensor& grad_output, Conv1dLayer& grad, Tensor* grad_input) const;
};

struct MaxPoolOutput {
  std::vector<double> values;         // per channel
  std::vector<std::size_t> argmax;    // first time step attaining the max
};

/// Per-channel maximum over the time axis of an (L, C) tensor.
MaxPoolOutput global_max_pool(const Tensor& input);
/// Routes each channel's gradient to its argmax position.
Tensor global_max_pool_backward(const MaxPoolOutput& pooled, std::span<const double> grad_output,
                                std::size_t length);

/// Per-element multipliers: 0 with probability `rate`, else 1 / (1 - rate).
std::vector<double> dropout_mask(std::size_t count, double rate, numeric::Rng& rng);

/// Inverted dropout. In inference mode (or at rate 0) the input is returned
/// unchanged and `mask_out`, when given, is filled with ones.
std::vector<double> dropout(std::span<const double> input, double rate, numeric::Rng& rng, bool training,
                            std::vector<double>* mask_out = nullptr);

void relu_inplace(std::span<double> values);

/// Uniform(-limit, limit) fill with limit = sqrt(6 / (fan_in + fan_out)).
void glorot_uniform(Tensor& t, std::size_t fan_in, std::size_t fan_out, numeric::Rng& rng);

}  // namespace sentikit::neural
