#include "sentikit/numeric/rng.hpp"

#include "sentikit/common/error.hpp"

namespace sentikit::numeric {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  require(lo < hi, "uniform: lo must be below hi");
  double value = lo + (hi - lo) * next_double();
  // Rounding in the affine map can land exactly on hi.
  return value < hi ? value : lo;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  require(bound > 0, "below: bound must be positive");
  unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

Rng Rng::split(std::uint64_t tag) const {
  return Rng(mix64(seed_ ^ mix64(tag + kGoldenGamma)));
}

}  // namespace sentikit::numeric
