#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace padyn::detail {

// A number in [0, 1) given by base-p digits 0.d_0 d_1 d_2 ... is read as an
// exact integer head (the first head_digits digits, < p^head_digits <= 2^52)
// plus a double tail for the next tail_digits digits. Linear combinations of
// heads are then reduced exactly, and only the tail carries rounding error.
struct PhaseScale {
  std::uint32_t p = 0;
  unsigned head_digits = 0;
  std::uint64_t head_modulus = 1;
  unsigned tail_digits = 0;
};

struct Phase {
  std::uint64_t head = 0;
  double tail = 0.0;  // in [0, 1), in units of p^-head_digits
};

inline PhaseScale phase_scale(std::uint32_t p) {
  PhaseScale s;
  s.p = p;
  while (s.head_modulus <= (std::uint64_t{1} << 52) / p) {
    s.head_modulus *= p;
    ++s.head_digits;
  }
  // Enough tail digits to push the truncation below 2^-40 of a head unit.
  double weight = 1.0;
  while (weight > 0x1.0p-40) {
    weight /= p;
    ++s.tail_digits;
  }
  return s;
}

/// digit_at(i) returns d_i for i < available; later digits are treated as zero.
template <class DigitAt>
Phase read_phase(const PhaseScale& s, DigitAt&& digit_at, std::size_t available) {
  Phase ph;
  const std::size_t head_end = available < s.head_digits ? available : s.head_digits;
  for (std::size_t i = 0; i < s.head_digits; ++i) {
    ph.head = ph.head * s.p + (i < head_end ? digit_at(i) : 0U);
  }
  std::size_t tail_end = s.head_digits + s.tail_digits;
  if (tail_end > available) tail_end = available;
  for (std::size_t i = tail_end; i-- > s.head_digits;) {
    ph.tail = (ph.tail + static_cast<double>(digit_at(i))) / s.p;
  }
  return ph;
}

inline double phase_value(const PhaseScale& s, const Phase& ph) {
  return (static_cast<double>(ph.head) + ph.tail) / static_cast<double>(s.head_modulus);
}

/// Sum_j m_j * phase_j reduced into [0, 1).
inline double combine_phases(const PhaseScale& s, std::span<const std::int64_t> m, std::span<const Phase> phases) {
  __extension__ typedef __int128 i128;
  const auto mod = static_cast<i128>(s.head_modulus);
  i128 head = 0;
  double tail = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    head = (head + (static_cast<i128>(m[j]) % mod) * static_cast<i128>(phases[j].head)) % mod;
    tail += static_cast<double>(m[j]) * phases[j].tail;
  }
  // Whole head units accumulated in the tails belong to the head.
  const double whole = std::floor(tail);
  head = (head + static_cast<i128>(whole) % mod) % mod;
  if (head < 0) head += mod;
  double theta = (static_cast<double>(head) + (tail - whole)) / static_cast<double>(s.head_modulus);
  theta -= std::floor(theta);
  return theta;
}

}  // namespace padyn::detail
