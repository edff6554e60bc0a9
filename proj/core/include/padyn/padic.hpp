#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padyn/prime.hpp"

namespace padyn {

using Digit = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Read-only window onto a shared, immutable digit vector.
///
/// Dropping leading entries is O(1) and never copies, which is what makes long
/// orbits of the digit shift cheap.
class DigitBuffer {
 public:
  DigitBuffer() = default;
  explicit DigitBuffer(std::vector<Digit> digits);

  [[nodiscard]] std::span<const Digit> span() const noexcept {
    return data_ ? std::span<const Digit>(data_->data() + offset_, size_) : std::span<const Digit>{};
  }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] Digit operator[](std::size_t i) const noexcept { return (*data_)[offset_ + i]; }

  /// Requires k <= size().
  [[nodiscard]] DigitBuffer drop_front(std::size_t k) const noexcept;
  /// Requires k <= size().
  [[nodiscard]] DigitBuffer take_front(std::size_t k) const noexcept;

 private:
  std::shared_ptr<const std::vector<Digit>> data_;
  std::size_t offset_ = 0;
  std::size_t size_ = 0;
};

/// A p-adic integer known to a fixed number of digits.
///
/// Digits are little-endian: digit(0) is t_0. The precision is the number of
/// known digits; nothing beyond it is ever read or invented. Values are
/// immutable and cheap to copy (the digit storage is shared).
class PadicInt {
 public:
  /// Throws InvalidDigit if any digit is >= p.
  PadicInt(Prime p, std::vector<Digit> digits);

  [[nodiscard]] static PadicInt zero(Prime p, std::size_t precision);
  [[nodiscard]] static PadicInt one(Prime p, std::size_t precision);

  [[nodiscard]] Prime prime() const noexcept { return p_; }
  [[nodiscard]] std::size_t precision() const noexcept { return buf_.size(); }
  [[nodiscard]] std::span<const Digit> digits() const noexcept { return buf_.span(); }

  /// t_n. Throws PrecisionExhausted if n >= precision().
  [[nodiscard]] Digit digit(std::size_t n) const;

  /// s_n = t_0 + t_1 p + ... + t_n p^n. Throws PrecisionExhausted if n >= precision().
  [[nodiscard]] BigInt partial_sum(std::size_t n) const;

  /// The integer represented by all known digits (s_{N-1}, or 0 when N = 0).
  [[nodiscard]] BigInt to_integer() const;

  /// (alpha - s_{k-1}(alpha)) / p^k: the lowest k digits are dropped and the
  /// precision shrinks by k. Throws PrecisionExhausted if k > precision().
  [[nodiscard]] PadicInt shifted(std::size_t k) const;

  /// The same element known to only n digits. Throws if n > precision().
  [[nodiscard]] PadicInt truncated(std::size_t n) const;

  /// True when every known digit is zero.
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] const DigitBuffer& buffer() const noexcept { return buf_; }
  /// Wraps an existing buffer without copying; digits are assumed valid for p.
  [[nodiscard]] static PadicInt from_buffer(Prime p, DigitBuffer buf) { return PadicInt(p, std::move(buf)); }

  friend bool operator==(const PadicInt& a, const PadicInt& b) noexcept;

 private:
  PadicInt(Prime p, DigitBuffer buf) : p_(p), buf_(std::move(buf)) {}

  Prime p_;
  DigitBuffer buf_;
};

/// p^val * unit, with t_0(unit) != 0.
struct ValUnit {
  std::size_t val;
  PadicInt unit;
};

/// Base-p digits of v, zero-padded or truncated to N digits. Requires N >= 1.
[[nodiscard]] PadicInt from_integer(std::uint64_t v, Prime p, std::size_t N);
[[nodiscard]] PadicInt from_integer(const BigInt& v, Prime p, std::size_t N);

/// Like from_integer but accepts negative v (reduced into Z_p).
[[nodiscard]] PadicInt from_signed(const BigInt& v, Prime p, std::size_t N);

// Ring operations. Operands must share the prime (PrimeMismatch otherwise);
// the result carries the smaller of the two precisions.
[[nodiscard]] PadicInt add(const PadicInt& a, const PadicInt& b);
[[nodiscard]] PadicInt sub(const PadicInt& a, const PadicInt& b);
[[nodiscard]] PadicInt mul(const PadicInt& a, const PadicInt& b);
[[nodiscard]] PadicInt neg(const PadicInt& a);

/// k * a for a machine integer k; precision unchanged.
[[nodiscard]] PadicInt scale(const PadicInt& a, std::int64_t k);

/// a^e by repeated squaring; precision unchanged.
[[nodiscard]] PadicInt pow(const PadicInt& a, std::uint64_t e);

inline PadicInt operator+(const PadicInt& a, const PadicInt& b) { return add(a, b); }
inline PadicInt operator-(const PadicInt& a, const PadicInt& b) { return sub(a, b); }
inline PadicInt operator*(const PadicInt& a, const PadicInt& b) { return mul(a, b); }
inline PadicInt operator-(const PadicInt& a) { return neg(a); }

/// sigma = p^val * unit. The unit has precision precision(sigma) - val.
/// Throws AllDigitsZero when no known digit is nonzero.
[[nodiscard]] ValUnit val_unit(const PadicInt& sigma);

/// p^val * unit at precision val + precision(unit).
[[nodiscard]] PadicInt recompose(const ValUnit& vu);

/// u^{-1} to the precision of u. Throws NotAUnit when t_0(u) == 0.
[[nodiscard]] PadicInt inverse_unit(const PadicInt& u);

/// Teichmuller lift of the residue a: the (p-1)-th root of unity congruent to a mod p.
///
/// For N <= kFrobeniusCutoff this iterates x -> x^p from x = a until it stops
/// changing; above the cutoff it runs a Newton iteration on x^{p-1} = 1, which
/// needs O(log N) multiplications instead of O(N). Requires 1 <= a <= p-1.
[[nodiscard]] PadicInt teichmuller(std::uint32_t a, Prime p, std::size_t N);
[[nodiscard]] PadicInt teichmuller_by_frobenius(std::uint32_t a, Prime p, std::size_t N);
[[nodiscard]] PadicInt teichmuller_by_newton(std::uint32_t a, Prime p, std::size_t N);
inline constexpr std::size_t kFrobeniusCutoff = 256;

/// N independent uniform digits from DigitStream(seed).
[[nodiscard]] PadicInt random_padic(std::uint64_t seed, Prime p, std::size_t N);

}  // namespace padyn
