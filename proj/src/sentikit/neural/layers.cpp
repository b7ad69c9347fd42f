#include "sentikit/neural/layers.hpp"

#include <cmath>
#include <limits>

#include "sentikit/common/error.hpp"

namespace sentikit::neural {

void DenseLayer::forward(std::span<const double> x, std::span<double> y) const {
  require(x.size() == in() && y.size() == out(), "dense: shape mismatch");
  const std::size_t n_in = in();
  for (std::size_t o = 0; o < out(); ++o) {
    const double* w = weight.data() + o * n_in;
    double sum = 0.0;
#pragma omp simd reduction(+ : sum)
    for (std::size_t i = 0; i < n_in; ++i) sum += w[i] * x[i];
    y[o] = bias[o] + sum;
  }
}

void DenseLayer::backward(std::span<const double> x, std::span<const double> grad_y, DenseLayer& grad,
                          std::span<double> grad_x) const {
  const std::size_t n_in = in();
  if (!grad_x.empty()) std::fill(grad_x.begin(), grad_x.end(), 0.0);
  for (std::size_t o = 0; o < out(); ++o) {
    const double g = grad_y[o];
    grad.bias[o] += g;
    double* gw = grad.weight.data() + o * n_in;
    const double* w = weight.data() + o * n_in;
    for (std::size_t i = 0; i < n_in; ++i) gw[i] += g * x[i];
    if (!grad_x.empty()) {
      for (std::size_t i = 0; i < n_in; ++i) grad_x[i] += g * w[i];
    }
  }
}

Tensor Conv1dLayer::forward(const Tensor& input) const {
  const std::size_t k_width = width();
  const std::size_t cin = in_channels();
  const std::size_t cout = out_channels();
  require(input.shape().size() == 2 && input.dim(1) == cin, "conv1d: input channel mismatch");
  const std::size_t length = input.dim(0);
  if (length < k_width) {
    throw_error(ErrorKind::kInvalidArgument, "conv1d: input length " + std::to_string(length) +
                                                 " is shorter than the filter width " + std::to_string(k_width));
  }
  const std::size_t out_len = length - k_width + 1;
  Tensor output({out_len, cout});
  for (std::size_t t = 0; t < out_len; ++t) {
    double* out = output.data() + t * cout;
    for (std::size_t o = 0; o < cout; ++o) out[o] = bias[o];
    for (std::size_t k = 0; k < k_width; ++k) {
      const double* in = input.data() + (t + k) * cin;
      const double* f = filters.data() + k * cin * cout;
      for (std::size_t i = 0; i < cin; ++i) {
        const double v = in[i];
        if (v == 0.0) continue;
        const double* fi = f + i * cout;
#pragma omp simd
        for (std::size_t o = 0; o < cout; ++o) out[o] += v * fi[o];
      }
    }
  }
  return output;
}

void Conv1dLayer::backward(const Tensor& input, const Tensor& grad_output, Conv1dLayer& grad,
                           Tensor* grad_input) const {
  const std::size_t k_width = width();
  const std::size_t cin = in_channels();
  const std::size_t cout = out_channels();
  const std::size_t out_len = grad_output.dim(0);
  require(grad_output.dim(1) == cout && input.dim(0) == out_len + k_width - 1, "conv1d backward: shape mismatch");
  if (grad_input) *grad_input = Tensor(input.shape());
  for (std::size_t t = 0; t < out_len; ++t) {
    const double* go = grad_output.data() + t * cout;
    for (std::size_t o = 0; o < cout; ++o) grad.bias[o] += go[o];
    for (std::size_t k = 0; k < k_width; ++k) {
      const double* in = input.data() + (t + k) * cin;
      const double* f = filters.data() + k * cin * cout;
      double* gf = grad.filters.data() + k * cin * cout;
      double* gi = grad_input ? grad_input->data() + (t + k) * cin : nullptr;
      for (std::size_t i = 0; i < cin; ++i) {
        const double v = in[i];
        double* gfi = gf + i * cout;
        if (v != 0.0) {
#pragma omp simd
          for (std::size_t o = 0; o < cout; ++o) gfi[o] += v * go[o];
        }
        if (gi) {
          const double* fi = f + i * cout;
          double sum = 0.0;
#pragma omp simd reduction(+ : sum)
          for (std::size_t o = 0; o < cout; ++o) sum += fi[o] * go[o];
          gi[i] += sum;
        }
      }
    }
  }
}

MaxPoolOutput global_max_pool(const Tensor& input) {
  require(input.shape().size() == 2, "global max pool expects a 2-D input");
  const std::size_t length = input.dim(0);
  const std::size_t channels = input.dim(1);
  require(length >= 1, "global max pool: empty time axis");
  MaxPoolOutput out{std::vector<double>(input.data(), input.data() + channels), std::vector<std::size_t>(channels, 0)};
  for (std::size_t t = 1; t < length; ++t) {
    const double* row = input.data() + t * channels;
    for (std::size_t c = 0; c < channels; ++c) {
      if (row[c] > out.values[c]) {
        out.values[c] = row[c];
        out.argmax[c] = t;
      }
    }
  }
  return out;
}

Tensor global_max_pool_backward(const MaxPoolOutput& pooled, std::span<const double> grad_output,
                                std::size_t length) {
  const std::size_t channels = pooled.values.size();
  require(grad_output.size() == channels, "global max pool backward: channel mismatch");
  Tensor grad({length, channels});
  for (std::size_t c = 0; c < channels; ++c) grad.at(pooled.argmax[c], c) = grad_output[c];
  return grad;
}

std::vector<double> dropout_mask(std::size_t count, double rate, numeric::Rng& rng) {
  require(rate >= 0.0 && rate < 1.0, "dropout rate must be in [0, 1)");
  std::vector<double> mask(count, 1.0);
  if (rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& m : mask) m = rng.next_double() < rate ? 0.0 : keep_scale;
  return mask;
}

std::vector<double> dropout(std::span<const double> input, double rate, numeric::Rng& rng, bool training,
                            std::vector<double>* mask_out) {
  require(rate >= 0.0 && rate < 1.0, "dropout rate must be in [0, 1)");
  std::vector<double> out(input.begin(), input.end());
  if (!training || rate == 0.0) {
    if (mask_out) mask_out->assign(input.size(), 1.0);
    return out;
  }
  auto mask = dropout_mask(input.size(), rate, rng);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
  if (mask_out) *mask_out = std::move(mask);
  return out;
}

void relu_inplace(std::span<double> values) {
  for (double& v : values) v = v > 0.0 ? v : 0.0;
}

void glorot_uniform(Tensor& t, std::size_t fan_in, std::size_t fan_out, numeric::Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double& v : t.values()) v = rng.uniform(-limit, limit);
}

}  // namespace sentikit::neural
