#pragma once

#include <cstdint>
#include <vector>

#include "sentikit/numeric/tensor.hpp"

namespace sentikit::numeric {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias-corrected moments. One state object covers a fixed list
/// of parameter tensors; moments are zero until the first step.
class Adam {
 public:
  Adam(AdamConfig config, const std::vector<Tensor*>& params);

  /// Applies one update to every tensor. `grads[i]` must match the shape of
  /// the i-th parameter registered at construction.
  void step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads);

  std::uint64_t steps() const noexcept { return t_; }
  const AdamConfig& config() const noexcept { return config_; }
  const std::vector<Tensor>& first_moments() const noexcept { return m_; }
  const std::vector<Tensor>& second_moments() const noexcept { return v_; }

 private:
  AdamConfig config_;
  std::uint64_t t_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

}  // namespace sentikit::numeric
