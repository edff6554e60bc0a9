#include "padyn/prime.hpp"

#include <limits>
#include <string>

#include "padyn/errors.hpp"

namespace padyn {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Digits are stored as 32-bit words and digit products must fit 64 bits, so
// primes are limited to 31 bits.
Prime::Prime(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1U << 31) || !is_prime(p)) {
    throw InvalidPrime("not an odd prime below 2^31: " + std::to_string(p));
  }
}

void require_same_prime(Prime a, Prime b, const char* what) {
  if (a != b) {
    throw PrimeMismatch(std::string(what) + ": primes differ (" + std::to_string(a.value()) + " vs " +
                        std::to_string(b.value()) + ")");
  }
}

std::uint64_t checked_power(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) {
      throw InvalidArgument(std::to_string(p) + "^" + std::to_string(k) + " overflows 64 bits");
    }
    r *= p;
  }
  return r;
}

}  // namespace padyn
