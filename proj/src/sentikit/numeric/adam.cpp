#include "sentikit/numeric/adam.hpp"

#include <cmath>

namespace sentikit::numeric {

Adam::Adam(AdamConfig config, const std::vector<Tensor*>& params) : config_(config) {
  require(config_.learning_rate >= 0.0, "adam: learning rate must be non-negative");
  require(config_.beta1 >= 0.0 && config_.beta1 < 1.0, "adam: beta1 must be in [0,1)");
  require(config_.beta2 >= 0.0 && config_.beta2 < 1.0, "adam: beta2 must be in [0,1)");
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const Tensor* p : params) {
    m_.emplace_back(p->shape());
    v_.emplace_back(p->shape());
  }
}

void Adam::step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads) {
  require(params.size() == m_.size() && grads.size() == m_.size(),
          "adam: parameter list does not match optimizer state");
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(params[i]->same_shape(m_[i]) && grads[i]->same_shape(m_[i]),
            "adam: shape mismatch at parameter " + std::to_string(i));
  }
  ++t_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  const double lr = config_.learning_rate;
  const double eps = config_.epsilon;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double* theta = params[i]->data();
    const double* g = grads[i]->data();
    double* m = m_[i].data();
    double* v = v_[i].data();
    const std::size_t n = m_[i].size();
    for (std::size_t j = 0; j < n; ++j) {
      m[j] = b1 * m[j] + (1.0 - b1) * g[j];
      v[j] = b2 * v[j] + (1.0 - b2) * g[j] * g[j];
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      theta[j] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

}  // namespace sentikit::numeric
