#include "sentikit/classical/linear_svm.hpp"

#include <algorithm>
#include <numeric>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/rng.hpp"

namespace sentikit::classical {

std::pair<std::vector<double>, double> svm_fit_binary(const SparseRowMatrix& x, std::span<const int> y, double c,
                                                       std::size_t epochs, std::uint64_t seed,
                                                       std::vector<double>* dual_history,
                                                       std::vector<double>* alpha_out,
                                                       std::pair<double, double>* alpha_range) {
  require(x.rows() == y.size() && x.rows() > 0, "svm: bad training set");
  require(c > 0.0, "svm: c must be positive");
  const std::size_t n = x.rows();
  std::vector<double> w(x.cols(), 0.0);
  double b = 0.0;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = x.row(i).squared_norm() + 1.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  numeric::Rng rng(seed);
  double lo = 0.0;
  double hi = 0.0;

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t i : order) {
      const SparseVector& xi = x.row(i);
      const double yi = static_cast<double>(y[i]);
      const double gradient = yi * (xi.dot_dense(w.data()) + b) - 1.0;
      const double updated = std::clamp(alpha[i] - gradient / diag[i], 0.0, c);
      const double delta = (updated - alpha[i]) * yi;
      if (delta != 0.0) {
        for (const auto& e : xi.entries()) w[e.index] += delta * e.value;
        b += delta;
      }
      alpha[i] = updated;
      lo = std::min(lo, updated);
      hi = std::max(hi, updated);
    }
    if (dual_history) {
      double norm2 = b * b;
      for (double v : w) norm2 += v * v;
      dual_history->push_back(std::accumulate(alpha.begin(), alpha.end(), 0.0) - 0.5 * norm2);
    }
  }
  if (alpha_out) *alpha_out = alpha;
  if (alpha_range) *alpha_range = {lo, hi};
  return {std::move(w), b};
}

LinearSvmModel svm_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, double c, std::size_t epochs,
                       std::uint64_t seed, SvmDiagnostics* diagnostics) {
  check_training_set(x, y);
  LinearSvmModel model;
  model.weights = numeric::Tensor({kNumClasses, x.cols()});
  const numeric::Rng root(seed);
  if (diagnostics) *diagnostics = SvmDiagnostics{};
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    std::vector<int> binary(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) binary[i] = class_index(y[i]) == cls ? 1 : -1;
    std::pair<double, double> range;
    auto [w, b] = svm_fit_binary(x, binary, c, epochs, root.split(cls).next_u64(),
                                 diagnostics ? &diagnostics->dual_objective[cls] : nullptr,
                                 diagnostics ? &diagnostics->alpha[cls] : nullptr, &range);
    std::copy(w.begin(), w.end(), model.weights.data() + cls * x.cols());
    model.bias[cls] = b;
    if (diagnostics) {
      diagnostics->min_alpha_seen = std::min(diagnostics->min_alpha_seen, range.first);
      diagnostics->max_alpha_seen = std::max(diagnostics->max_alpha_seen, range.second);
    }
  }
  return model;
}

Scores LinearSvmModel::scores(const SparseVector& x) const {
  require(x.dimension() == weights.dim(1), "svm: feature dimension mismatch");
  Scores s{};
  for (std::size_t c = 0; c < kNumClasses; ++c) s[c] = bias[c] + x.dot_dense(weights.data() + c * weights.dim(1));
  return s;
}

}  // namespace sentikit::classical
