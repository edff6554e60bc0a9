#include "padyn/solenoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "padyn/detail/phase.hpp"
#include "padyn/errors.hpp"

namespace padyn {

namespace {

std::size_t significant_length(std::span<const Digit> d) {
  std::size_t n = d.size();
  while (n > 0 && d[n - 1] == 0) --n;
  return n;
}

// Digits of coord_t(s) / p^t read from the most significant end:
// t_{t-1}, ..., t_0, a_{-1}, a_{-2}, ...
detail::Phase level_phase(const detail::PhaseScale& scale, const SolenoidPoint& s, unsigned t) {
  if (t > s.padic().precision()) {
    throw PrecisionExhausted("character level " + std::to_string(t) + " exceeds p-adic precision " +
                             std::to_string(s.padic().precision()));
  }
  const auto padic = s.padic().digits();
  const auto real = s.real().digits();
  auto at = [&](std::size_t i) -> Digit { return i < t ? padic[t - 1 - i] : real[i - t]; };
  return detail::read_phase(scale, at, t + real.size());
}

std::complex<double> unit_circle(double theta) {
  const double angle = 2.0 * std::numbers::pi * theta;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

BasePFraction::BasePFraction(Prime p, std::vector<Digit> digits) : p_(p), digits_(std::move(digits)) {
  for (Digit d : digits_) {
    if (d >= p.value()) throw InvalidDigit("fraction digit " + std::to_string(d) + " is not below p");
  }
}

BasePFraction BasePFraction::zero(Prime p, std::size_t precision) {
  return BasePFraction(p, std::vector<Digit>(precision, 0));
}

Digit BasePFraction::digit(std::size_t j) const {
  if (j == 0 || j > digits_.size()) {
    throw PrecisionExhausted("fraction digit " + std::to_string(j) + " outside 1.." + std::to_string(digits_.size()));
  }
  return digits_[j - 1];
}

Rational BasePFraction::exact() const {
  BigInt num = 0;
  BigInt den = 1;
  for (Digit d : digits_) {
    num = num * p_.value() + d;
    den *= p_.value();
  }
  return Rational(num, den);
}

double BasePFraction::to_double() const {
  const auto scale = detail::phase_scale(p_.value());
  const auto ph = detail::read_phase(scale, [&](std::size_t i) { return digits_[i]; }, digits_.size());
  return detail::phase_value(scale, ph);
}

BasePFraction BasePFraction::prepended(Digit d) const {
  std::vector<Digit> out;
  out.reserve(digits_.size() + 1);
  out.push_back(d);
  out.insert(out.end(), digits_.begin(), digits_.end());
  return BasePFraction(p_, std::move(out));
}

bool operator==(const BasePFraction& a, const BasePFraction& b) noexcept {
  if (!(a.p_ == b.p_)) return false;
  const auto la = significant_length(a.digits_);
  const auto lb = significant_length(b.digits_);
  return la == lb && std::equal(a.digits_.begin(), a.digits_.begin() + static_cast<std::ptrdiff_t>(la),
                                b.digits_.begin());
}

SolenoidPoint::SolenoidPoint(PadicInt padic, BasePFraction real) : padic_(std::move(padic)), real_(std::move(real)) {
  require_same_prime(padic_.prime(), real_.prime(), "solenoid point");
}

ProductPoint::ProductPoint(std::vector<SolenoidPoint> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw InvalidArgument("product point needs at least one component");
  for (const auto& c : comps_) require_same_prime(comps_.front().prime(), c.prime(), "product point");
}

ProductPoint ProductPoint::from_padics(const std::vector<PadicInt>& gammas) {
  std::vector<SolenoidPoint> comps;
  comps.reserve(gammas.size());
  for (const auto& g : gammas) comps.emplace_back(g, BasePFraction::zero(g.prime()));
  return ProductPoint(std::move(comps));
}

CharacterIndex::CharacterIndex(std::vector<std::int64_t> m, unsigned t) : m_(std::move(m)), t_(t) {
  if (std::all_of(m_.begin(), m_.end(), [](std::int64_t v) { return v == 0; })) {
    throw ZeroVector("character frequency vector is zero");
  }
  if (t_ > kMaxCharacterLevel) {
    throw InvalidArgument("character level " + std::to_string(t_) + " exceeds " + std::to_string(kMaxCharacterLevel));
  }
}

SolenoidPoint t3_step(const SolenoidPoint& s) {
  const Digit t0 = s.padic().digit(0);
  return SolenoidPoint(s.padic().shifted(1), s.real().prepended(t0));
}

SolenoidPoint t3_iterate(const SolenoidPoint& s, std::size_t n) {
  if (n > s.padic().precision()) {
    throw PrecisionExhausted("cannot apply " + std::to_string(n) + " steps at precision " +
                             std::to_string(s.padic().precision()));
  }
  std::vector<Digit> real;
  real.reserve(n + s.real().precision());
  const auto padic = s.padic().digits();
  for (std::size_t i = n; i-- > 0;) real.push_back(padic[i]);
  real.insert(real.end(), s.real().digits().begin(), s.real().digits().end());
  return SolenoidPoint(s.padic().shifted(n), BasePFraction(s.prime(), std::move(real)));
}

PadicInt tcal3_step(const PadicInt& alpha) { return alpha.shifted(1); }

PadicInt tcal3_iterate(const PadicInt& alpha, std::size_t n) { return alpha.shifted(n); }

SolenoidPoint orbit_closed_form(const PadicInt& gamma, std::size_t n) {
  const Prime p = gamma.prime();
  const BigInt sn = gamma.partial_sum(n);
  // s_n / p^{n+1} has exactly n+1 fraction digits: t_n, ..., t_0.
  const PadicInt low = from_integer(sn, p, n + 1);
  std::vector<Digit> real(low.digits().rbegin(), low.digits().rend());
  return SolenoidPoint(gamma.shifted(n + 1), BasePFraction(p, std::move(real)));
}

Rational x0_coordinate(const SolenoidPoint& s, unsigned t) {
  if (t == 0) return s.real().exact();
  return Rational(s.padic().partial_sum(t - 1)) + s.real().exact();
}

std::complex<double> character_eval(const ProductPoint& P, const CharacterIndex& chi) {
  if (chi.m().size() != P.dim()) {
    throw InvalidArgument("character has " + std::to_string(chi.m().size()) + " frequencies for a point of dimension " +
                          std::to_string(P.dim()));
  }
  const auto scale = detail::phase_scale(P.prime().value());
  std::vector<detail::Phase> phases;
  phases.reserve(P.dim());
  for (const auto& c : P.components()) phases.push_back(level_phase(scale, c, chi.t()));
  return unit_circle(detail::combine_phases(scale, chi.m(), phases));
}

std::complex<double> character_eval(const SolenoidPoint& s, std::int64_t m, unsigned t) {
  return character_eval(ProductPoint({s}), CharacterIndex({m}, t));
}

SolenoidPoint linear_combination(const ProductPoint& P, std::span<const std::int64_t> m) {
  if (m.size() != P.dim()) throw InvalidArgument("linear combination length does not match point dimension");
  if (std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v == 0; })) {
    throw ZeroVector("linear combination with zero coefficient vector");
  }
  const Prime p = P.prime();
  std::size_t precision = P[0].padic().precision();
  std::size_t M = 0;
  for (const auto& c : P.components()) {
    precision = std::min(precision, c.padic().precision());
    M = std::max(M, c.real().precision());
  }

  // Real parts scaled to integers X_j = x_j p^M, combined exactly.
  BigInt total = 0;
  for (std::size_t j = 0; j < P.dim(); ++j) {
    const auto digits = P[j].real().digits();
    BigInt X = 0;
    for (std::size_t i = 0; i < M; ++i) X = X * p.value() + (i < digits.size() ? digits[i] : 0U);
    total += BigInt(m[j]) * X;
  }
  BigInt pM = 1;
  for (std::size_t i = 0; i < M; ++i) pM *= p.value();
  BigInt carry = total / pM;
  BigInt rem = total - carry * pM;
  if (rem < 0) {
    rem += pM;
    carry -= 1;
  }

  std::vector<Digit> real;
  if (M > 0) {
    const PadicInt low = from_integer(rem, p, M);
    real.assign(low.digits().rbegin(), low.digits().rend());
  }

  PadicInt padic = PadicInt::zero(p, precision);
  for (std::size_t j = 0; j < P.dim(); ++j) {
    if (m[j] != 0) padic = padic + scale(P[j].padic(), m[j]);
  }
  if (carry != 0 && precision > 0) padic = padic + from_signed(carry, p, precision);
  return SolenoidPoint(padic, BasePFraction(p, std::move(real)));
}

ProductPoint t3_step(const ProductPoint& P) {
  std::vector<SolenoidPoint> out;
  out.reserve(P.dim());
  for (const auto& c : P.components()) out.push_back(t3_step(c));
  return ProductPoint(std::move(out));
}

FloorResult floor_padic(const PadicRational& beta) {
  const std::size_t e = beta.shift;
  if (e > beta.num.precision()) {
    throw PrecisionExhausted("floor shift " + std::to_string(e) + " exceeds precision " +
                             std::to_string(beta.num.precision()));
  }
  if (e == 0) return {beta.num, Rational(0)};
  BigInt pe = 1;
  for (std::size_t i = 0; i < e; ++i) pe *= beta.num.prime().value();
  return {beta.num.shifted(e), Rational(beta.num.partial_sum(e - 1), pe)};
}

std::vector<std::vector<std::int64_t>> enumerate_V(std::size_t r, std::int64_t B) {
  if (r == 0) throw InvalidArgument("V enumeration needs r >= 1");
  if (B < 1) throw InvalidArgument("V enumeration needs B >= 1");
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> m(r, -B);
  while (true) {
    if (std::any_of(m.begin(), m.end(), [](std::int64_t v) { return v != 0; })) out.push_back(m);
    std::size_t j = r;
    while (j > 0 && m[j - 1] == B) {
      m[j - 1] = -B;
      --j;
    }
    if (j == 0) break;
    ++m[j - 1];
  }
  return out;
}

}  // namespace padyn
