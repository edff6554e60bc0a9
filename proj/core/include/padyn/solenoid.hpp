#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

/// x in [0, 1) as base-p digits a_{-1}, a_{-2}, ..., a_{-M}.
///
/// digits()[0] is a_{-1}. Equality compares values, so trailing zero digits
/// do not matter.
class BasePFraction {
 public:
  /// Throws InvalidDigit if any digit is >= p.
  BasePFraction(Prime p, std::vector<Digit> digits);

  [[nodiscard]] static BasePFraction zero(Prime p, std::size_t precision = 0);

  [[nodiscard]] Prime prime() const noexcept { return p_; }
  [[nodiscard]] std::size_t precision() const noexcept { return digits_.size(); }
  [[nodiscard]] std::span<const Digit> digits() const noexcept { return digits_; }

  /// a_{-j} for 1 <= j <= precision(). Throws PrecisionExhausted otherwise.
  [[nodiscard]] Digit digit(std::size_t j) const;

  [[nodiscard]] Rational exact() const;
  [[nodiscard]] double to_double() const;

  /// (x + d) / p: d becomes the new leading digit and precision grows by one.
  [[nodiscard]] BasePFraction prepended(Digit d) const;

  friend bool operator==(const BasePFraction& a, const BasePFraction& b) noexcept;

 private:
  Prime p_;
  std::vector<Digit> digits_;
};

/// A point of Z_p x [0, 1), the fundamental domain of the solenoid.
class SolenoidPoint {
 public:
  /// Throws PrimeMismatch if the two coordinates disagree on p.
  SolenoidPoint(PadicInt padic, BasePFraction real);

  [[nodiscard]] Prime prime() const noexcept { return padic_.prime(); }
  [[nodiscard]] const PadicInt& padic() const noexcept { return padic_; }
  [[nodiscard]] const BasePFraction& real() const noexcept { return real_; }

  friend bool operator==(const SolenoidPoint& a, const SolenoidPoint& b) noexcept = default;

 private:
  PadicInt padic_;
  BasePFraction real_;
};

/// r >= 1 solenoid points over one prime.
class ProductPoint {
 public:
  /// Throws InvalidArgument if empty, PrimeMismatch on mixed primes.
  explicit ProductPoint(std::vector<SolenoidPoint> components);

  /// (gamma_i, 0) for each gamma_i.
  [[nodiscard]] static ProductPoint from_padics(const std::vector<PadicInt>& gammas);

  [[nodiscard]] Prime prime() const noexcept { return comps_.front().prime(); }
  [[nodiscard]] std::size_t dim() const noexcept { return comps_.size(); }
  [[nodiscard]] const SolenoidPoint& operator[](std::size_t i) const { return comps_[i]; }
  [[nodiscard]] const std::vector<SolenoidPoint>& components() const noexcept { return comps_; }

  friend bool operator==(const ProductPoint& a, const ProductPoint& b) noexcept = default;

 private:
  std::vector<SolenoidPoint> comps_;
};

inline constexpr unsigned kMaxCharacterLevel = 40;

/// Frequency vector m (not all zero) and level t <= kMaxCharacterLevel.
class CharacterIndex {
 public:
  /// Throws ZeroVector if m is zero or empty, InvalidArgument if t is too large.
  CharacterIndex(std::vector<std::int64_t> m, unsigned t);

  [[nodiscard]] const std::vector<std::int64_t>& m() const noexcept { return m_; }
  [[nodiscard]] unsigned t() const noexcept { return t_; }

 private:
  std::vector<std::int64_t> m_;
  unsigned t_;
};

/// p^{-shift} * num, an element of Q_p.
struct PadicRational {
  PadicInt num;
  std::size_t shift = 0;
};

struct FloorResult {
  PadicInt floor;
  Rational remainder;  // in [0, 1), denominator p^shift
};

/// T3(alpha, x) = ((alpha - t_0)/p, (x + t_0)/p). Throws PrecisionExhausted at precision 0.
[[nodiscard]] SolenoidPoint t3_step(const SolenoidPoint& s);

/// n applications of t3_step.
[[nodiscard]] SolenoidPoint t3_iterate(const SolenoidPoint& s, std::size_t n);

/// The bare digit shift alpha -> (alpha - t_0)/p.
[[nodiscard]] PadicInt tcal3_step(const PadicInt& alpha);

/// n applications of tcal3_step; O(1).
[[nodiscard]] PadicInt tcal3_iterate(const PadicInt& alpha, std::size_t n);

/// T3^{n+1}(gamma, 0) = ((gamma - s_n)/p^{n+1}, s_n/p^{n+1}), computed directly.
/// Requires n + 1 <= precision(gamma).
[[nodiscard]] SolenoidPoint orbit_closed_form(const PadicInt& gamma, std::size_t n);

/// x + s_{t-1}(padic) as an exact rational in [0, p^t); for t = 0 just x.
[[nodiscard]] Rational x0_coordinate(const SolenoidPoint& s, unsigned t);

/// exp(2 pi i * sum_j m_j coord_t(P_j) / p^t).
///
/// The level-t coordinates are summed exactly on their leading digits, so the
/// only rounding is in the final exponential.
[[nodiscard]] std::complex<double> character_eval(const ProductPoint& P, const CharacterIndex& chi);
[[nodiscard]] std::complex<double> character_eval(const SolenoidPoint& s, std::int64_t m, unsigned t);

/// sum_j m_j (gamma_j, x_j) in the canonical (Z_p, [0, 1)) form: the integer part
/// of sum_j m_j x_j is carried into the p-adic coordinate.
[[nodiscard]] SolenoidPoint linear_combination(const ProductPoint& P, std::span<const std::int64_t> m);

/// Componentwise t3_step.
[[nodiscard]] ProductPoint t3_step(const ProductPoint& P);

/// Splits p^{-e} num into floor in Z_p and remainder s_{e-1}(num)/p^e.
[[nodiscard]] FloorResult floor_padic(const PadicRational& beta);

/// All m in Z^r with max|m_j| <= B and m != 0, in lexicographic order
/// (m_1 most significant, each entry running from -B to B).
[[nodiscard]] std::vector<std::vector<std::int64_t>> enumerate_V(std::size_t r, std::int64_t B);

}  // namespace padyn
