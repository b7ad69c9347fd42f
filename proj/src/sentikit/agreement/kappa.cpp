#include "sentikit/agreement/kappa.hpp"

#include "sentikit/common/error.hpp"

namespace sentikit::agreement {

double cohen_kappa_binary(std::span<const Sentiment> labels_a, std::span<const Sentiment> labels_b,
                          Sentiment target) {
  require(labels_a.size() == labels_b.size(), "kappa: label sequences differ in length");
  require(!labels_a.empty(), "kappa: empty label sequences");
  const std::size_t n = labels_a.size();
  std::size_t agree = 0;
  std::size_t yes_a = 0;
  std::size_t yes_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = labels_a[i] == target;
    const bool b = labels_b[i] == target;
    agree += (a == b);
    yes_a += a;
    yes_b += b;
  }
  if (agree == n) return 1.0;
  const double total = static_cast<double>(n);
  const double p_o = static_cast<double>(agree) / total;
  const double pa = static_cast<double>(yes_a) / total;
  const double pb = static_cast<double>(yes_b) / total;
  const double p_e = pa * pb + (1.0 - pa) * (1.0 - pb);
  if (p_e >= 1.0) throw_error(ErrorKind::kInvalidArgument, "kappa: degenerate marginals with disagreement");
  return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace sentikit::agreement
