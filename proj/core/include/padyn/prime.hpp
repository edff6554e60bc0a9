#pragma once

#include <compare>
#include <cstdint>

namespace padyn {

/// An odd prime p >= 3, checked at construction.
class Prime {
 public:
  explicit Prime(std::uint32_t p);

  [[nodiscard]] constexpr std::uint32_t value() const noexcept { return p_; }

  friend constexpr bool operator==(Prime, Prime) noexcept = default;

 private:
  std::uint32_t p_;
};

[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

/// Throws PrimeMismatch unless a == b.
void require_same_prime(Prime a, Prime b, const char* what);

/// p^k as an unsigned 64-bit integer; throws InvalidArgument on overflow.
[[nodiscard]] std::uint64_t checked_power(std::uint64_t p, unsigned k);

}  // namespace padyn
