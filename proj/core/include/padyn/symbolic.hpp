#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/solenoid.hpp"

namespace padyn {

/// A finite window (..., a_{-2}, a_{-1} | t_0, t_1, ...) of a two-sided word.
///
/// Index i >= 0 is the p-adic side, i < 0 the real side. All digits live in one
/// shared buffer ordered by index, so shifting only moves the origin.
class TwoSidedWord {
 public:
  /// neg lists a_{-1}, a_{-2}, ..., a_{-L}; nonneg lists t_0, ..., t_{R-1}.
  TwoSidedWord(Prime p, std::span<const Digit> neg, std::span<const Digit> nonneg);

  [[nodiscard]] Prime prime() const noexcept { return p_; }
  [[nodiscard]] std::size_t neg_length() const noexcept { return origin_; }
  [[nodiscard]] std::size_t nonneg_length() const noexcept { return buf_.size() - origin_; }

  [[nodiscard]] bool knows(std::int64_t index) const noexcept;
  /// Throws PrecisionExhausted outside the known window.
  [[nodiscard]] Digit at(std::int64_t index) const;

  /// a_{-1}, a_{-2}, ... (a copy, index -1 first).
  [[nodiscard]] std::vector<Digit> neg_digits() const;
  [[nodiscard]] std::span<const Digit> nonneg_digits() const noexcept { return buf_.span().subspan(origin_); }

  /// The left shift: t_0 moves to index -1. Throws PrecisionExhausted when R = 0.
  [[nodiscard]] TwoSidedWord shifted() const;

  friend bool operator==(const TwoSidedWord& a, const TwoSidedWord& b) noexcept;

 private:
  TwoSidedWord(Prime p, DigitBuffer buf, std::size_t origin) : p_(p), buf_(std::move(buf)), origin_(origin) {}

  Prime p_;
  DigitBuffer buf_;     // a_{-L}, ..., a_{-1}, t_0, ..., t_{R-1}
  std::size_t origin_;  // buffer position of index 0
};

/// A finite window t_0, ..., t_{R-1} of a one-sided word.
class OneSidedWord {
 public:
  OneSidedWord(Prime p, std::vector<Digit> digits);
  /// Shares the digit storage of alpha.
  [[nodiscard]] static OneSidedWord from_padic(const PadicInt& alpha);

  [[nodiscard]] Prime prime() const noexcept { return p_; }
  [[nodiscard]] std::size_t length() const noexcept { return buf_.size(); }
  [[nodiscard]] std::span<const Digit> digits() const noexcept { return buf_.span(); }
  [[nodiscard]] bool knows(std::int64_t index) const noexcept {
    return index >= 0 && static_cast<std::size_t>(index) < buf_.size();
  }
  [[nodiscard]] Digit at(std::int64_t index) const;

  /// Drops t_0. Throws PrecisionExhausted when empty.
  [[nodiscard]] OneSidedWord shifted() const;

  friend bool operator==(const OneSidedWord& a, const OneSidedWord& b) noexcept;

 private:
  OneSidedWord(Prime p, DigitBuffer buf) : p_(p), buf_(std::move(buf)) {}

  Prime p_;
  DigitBuffer buf_;
};

/// A cylinder set: required digits at finitely many indices. Empty means the whole space.
class CylinderSpec {
 public:
  explicit CylinderSpec(Prime p) : p_(p) {}
  /// Throws InvalidDigit on digits >= p and InvalidArgument on repeated indices.
  CylinderSpec(Prime p, std::span<const std::pair<std::int64_t, Digit>> constraints);
  CylinderSpec(Prime p, std::initializer_list<std::pair<std::int64_t, Digit>> constraints);

  [[nodiscard]] Prime prime() const noexcept { return p_; }
  [[nodiscard]] const std::map<std::int64_t, Digit>& constraints() const noexcept { return constraints_; }
  [[nodiscard]] std::size_t size() const noexcept { return constraints_.size(); }
  [[nodiscard]] bool empty() const noexcept { return constraints_.empty(); }

  friend bool operator==(const CylinderSpec& a, const CylinderSpec& b) noexcept = default;

 private:
  Prime p_;
  std::map<std::int64_t, Digit> constraints_;
};

struct EmptySet {
  friend bool operator==(EmptySet, EmptySet) noexcept { return true; }
};

using CylinderOrEmpty = std::variant<CylinderSpec, EmptySet>;

/// (1/p)^{|c|}.
[[nodiscard]] Rational cylinder_measure(const CylinderSpec& c);

/// Throws PrecisionExhausted if a constrained index is outside the word's window,
/// PrimeMismatch if the primes differ.
[[nodiscard]] bool cylinder_contains(const TwoSidedWord& w, const CylinderSpec& c);
[[nodiscard]] bool cylinder_contains(const OneSidedWord& w, const CylinderSpec& c);

/// The intersection as a cylinder, or EmptySet when two constraints conflict.
[[nodiscard]] CylinderOrEmpty cylinder_intersect(const CylinderSpec& a, const CylinderSpec& b);

/// Every constrained index moved by offset. Negative offsets are allowed.
[[nodiscard]] CylinderSpec translate_cylinder(const CylinderSpec& c, std::int64_t offset);

[[nodiscard]] TwoSidedWord shift2(const TwoSidedWord& w);
/// k applications of shift2.
[[nodiscard]] TwoSidedWord shift2(const TwoSidedWord& w, std::size_t k);
[[nodiscard]] OneSidedWord shift1(const OneSidedWord& w);

/// The p-adic integer with the same digits and precision.
[[nodiscard]] PadicInt pi_Y(const OneSidedWord& w);
/// sum_j a_{-j} p^{-j}.
[[nodiscard]] BasePFraction pi_Z(Prime p, std::span<const Digit> neg);
[[nodiscard]] SolenoidPoint pi(const TwoSidedWord& w);

/// True when x lies in the open interval (a/p^n, (a+1)/p^n), decided from the
/// first n digits plus whether any later known digit is nonzero.
/// Throws PrecisionExhausted if x has fewer than n digits, InvalidArgument if a >= p^n.
[[nodiscard]] bool in_open_interval(const BasePFraction& x, std::uint64_t a, unsigned n);

/// L + R uniform digits drawn from DigitStream(seed): first t_0..t_{R-1}, then a_{-1}..a_{-L}.
[[nodiscard]] TwoSidedWord sample_uniform_word(std::uint64_t seed, Prime p, std::size_t L, std::size_t R);

}  // namespace padyn
