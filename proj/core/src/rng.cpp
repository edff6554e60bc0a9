#include "padyn/rng.hpp"

#include <limits>

namespace padyn {

std::uint64_t DigitStream::uniform(std::uint64_t bound) noexcept {
  const std::uint64_t limit = bound * (std::numeric_limits<std::uint64_t>::max() / bound);
  for (;;) {
    const std::uint64_t u = next_u64();
    if (u < limit) return u % bound;
  }
}

}  // namespace padyn
