#pragma once

#include <cstdint>

namespace padyn {

// Deterministic digit source shared by every seeded operation.
//
// The generator is SplitMix64 used in counter mode: the k-th 64-bit output of
// the stream for seed s is mix64(mix64(s) + k * 0x9E3779B97F4A7C15), k = 1, 2, ...
// Uniform digits in [0, p) are drawn by rejection: outputs at or above
// floor(2^64 / p) * p are discarded, the rest are reduced mod p.
//
// Independent sub-streams come from derive_seed(seed, index), which is
// mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15)).

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

class DigitStream {
 public:
  explicit DigitStream(std::uint64_t seed) noexcept : base_(mix64(seed)) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(base_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform value in [0, bound); bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double unit_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace padyn
