#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace sentikit::numeric {

/// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
/// generators", OOPSLA 2014; reference code by Vigna, 2015). The state is a
/// Weyl counter advanced by the golden gamma 0x9e3779b97f4a7c15 and each
/// output is the counter passed through the fmix64-style finalizer.
///
/// Reference stream for seed 0 (first four outputs):
///   0xe220a8397b1dcdaf 0x6e789e6aa1b965f4 0x06c45d188009454f 0xf88bb8a8724c81ec
///
/// The stream is fully determined by the seed and uses only 64-bit integer
/// arithmetic, so it is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of resolution.
  double next_double();

  /// Uniform in [lo, hi). Requires lo < hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, bound). Requires bound > 0. Unbiased (Lemire's
  /// multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

  /// Child stream that depends only on (construction seed, tag), never on
  /// how many values the parent has produced.
  Rng split(std::uint64_t tag) const;

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// The SplitMix64 output finalizer, exposed for seed derivation.
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace sentikit::numeric
