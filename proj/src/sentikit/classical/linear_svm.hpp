#pragma once

#include <cstdint>
#include <vector>

#include "sentikit/classical/types.hpp"
#include "sentikit/numeric/tensor.hpp"

namespace sentikit::classical {

/// One-vs-rest linear SVMs. The bias is learned as the weight of an
/// implicit constant feature of value 1, so it is regularized together with
/// the other weights.
struct LinearSvmModel {
  numeric::Tensor weights;  // (3, dim)
  std::array<double, kNumClasses> bias{};

  /// Decision values w_c . x + b_c.
  Scores scores(const SparseVector& x) const;

  friend bool operator==(const LinearSvmModel&, const LinearSvmModel&) = default;
};

struct SvmDiagnostics {
  /// Dual objective sum(alpha) - 0.5 * ||w||^2 after each epoch, per class.
  std::array<std::vector<double>, kNumClasses> dual_objective;
  std::array<std::vector<double>, kNumClasses> alpha;
  /// Smallest and largest dual value observed after any single update.
  double min_alpha_seen = 0.0;
  double max_alpha_seen = 0.0;
};

/// Binary L2-regularized hinge-loss SVM trained by dual coordinate descent
/// with box constraint [0, c]. `y` holds +1/-1. Returns (w, b).
std::pair<std::vector<double>, double> svm_fit_binary(const SparseRowMatrix& x, std::span<const int> y, double c,
                                                       std::size_t epochs, std::uint64_t seed,
                                                       std::vector<double>* dual_history = nullptr,
                                                       std::vector<double>* alpha_out = nullptr,
                                                       std::pair<double, double>* alpha_range = nullptr);

LinearSvmModel svm_fit(const SparseRowMatrix& x, std::span<const Sentiment> y, double c, std::size_t epochs,
                       std::uint64_t seed, SvmDiagnostics* diagnostics = nullptr);

}  // namespace sentikit::classical
