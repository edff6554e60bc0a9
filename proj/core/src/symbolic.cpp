#include "padyn/symbolic.hpp"

#include <algorithm>
#include <string>

#include "padyn/errors.hpp"
#include "padyn/rng.hpp"

namespace padyn {

namespace {

void check_digits(Prime p, std::span<const Digit> digits, const char* what) {
  for (Digit d : digits) {
    if (d >= p.value()) throw InvalidDigit(std::string(what) + ": digit " + std::to_string(d) + " is not below p");
  }
}

[[noreturn]] void unknown_index(std::int64_t index, const char* what) {
  throw PrecisionExhausted(std::string(what) + ": index " + std::to_string(index) + " is outside the known window");
}

template <class Word>
bool contains_impl(const Word& w, const CylinderSpec& c) {
  require_same_prime(w.prime(), c.prime(), "cylinder membership");
  for (const auto& [index, digit] : c.constraints()) {
    if (!w.knows(index)) unknown_index(index, "cylinder membership");
  }
  return std::all_of(c.constraints().begin(), c.constraints().end(),
                     [&](const auto& kv) { return w.at(kv.first) == kv.second; });
}

}  // namespace

TwoSidedWord::TwoSidedWord(Prime p, std::span<const Digit> neg, std::span<const Digit> nonneg)
    : p_(p), origin_(neg.size()) {
  check_digits(p, neg, "word");
  check_digits(p, nonneg, "word");
  std::vector<Digit> all(neg.rbegin(), neg.rend());
  all.insert(all.end(), nonneg.begin(), nonneg.end());
  buf_ = DigitBuffer(std::move(all));
}

bool TwoSidedWord::knows(std::int64_t index) const noexcept {
  const auto lo = -static_cast<std::int64_t>(origin_);
  const auto hi = static_cast<std::int64_t>(buf_.size() - origin_);
  return index >= lo && index < hi;
}

Digit TwoSidedWord::at(std::int64_t index) const {
  if (!knows(index)) unknown_index(index, "word");
  return buf_[static_cast<std::size_t>(static_cast<std::int64_t>(origin_) + index)];
}

std::vector<Digit> TwoSidedWord::neg_digits() const {
  const auto s = buf_.span().first(origin_);
  return {s.rbegin(), s.rend()};
}

TwoSidedWord TwoSidedWord::shifted() const {
  if (nonneg_length() == 0) throw PrecisionExhausted("shift of a word with no non-negative digits");
  return TwoSidedWord(p_, buf_, origin_ + 1);
}

bool operator==(const TwoSidedWord& a, const TwoSidedWord& b) noexcept {
  if (!(a.p_ == b.p_) || a.origin_ != b.origin_ || a.buf_.size() != b.buf_.size()) return false;
  const auto sa = a.buf_.span();
  const auto sb = b.buf_.span();
  return std::equal(sa.begin(), sa.end(), sb.begin());
}

OneSidedWord::OneSidedWord(Prime p, std::vector<Digit> digits) : p_(p) {
  check_digits(p, digits, "word");
  buf_ = DigitBuffer(std::move(digits));
}

OneSidedWord OneSidedWord::from_padic(const PadicInt& alpha) { return OneSidedWord(alpha.prime(), alpha.buffer()); }

Digit OneSidedWord::at(std::int64_t index) const {
  if (!knows(index)) unknown_index(index, "word");
  return buf_[static_cast<std::size_t>(index)];
}

OneSidedWord OneSidedWord::shifted() const {
  if (buf_.size() == 0) throw PrecisionExhausted("shift of an empty word");
  return OneSidedWord(p_, buf_.drop_front(1));
}

bool operator==(const OneSidedWord& a, const OneSidedWord& b) noexcept {
  const auto sa = a.buf_.span();
  const auto sb = b.buf_.span();
  return a.p_ == b.p_ && std::equal(sa.begin(), sa.end(), sb.begin(), sb.end());
}

CylinderSpec::CylinderSpec(Prime p, std::span<const std::pair<std::int64_t, Digit>> constraints) : p_(p) {
  for (const auto& [index, digit] : constraints) {
    if (digit >= p.value()) throw InvalidDigit("cylinder digit " + std::to_string(digit) + " is not below p");
    if (!constraints_.emplace(index, digit).second) {
      throw InvalidArgument("cylinder index " + std::to_string(index) + " constrained twice");
    }
  }
}

CylinderSpec::CylinderSpec(Prime p, std::initializer_list<std::pair<std::int64_t, Digit>> constraints)
    : CylinderSpec(p, std::span<const std::pair<std::int64_t, Digit>>(constraints.begin(), constraints.size())) {}

Rational cylinder_measure(const CylinderSpec& c) {
  BigInt den = 1;
  for (std::size_t i = 0; i < c.size(); ++i) den *= c.prime().value();
  return Rational(1, den);
}

bool cylinder_contains(const TwoSidedWord& w, const CylinderSpec& c) { return contains_impl(w, c); }
bool cylinder_contains(const OneSidedWord& w, const CylinderSpec& c) { return contains_impl(w, c); }

CylinderOrEmpty cylinder_intersect(const CylinderSpec& a, const CylinderSpec& b) {
  require_same_prime(a.prime(), b.prime(), "cylinder intersection");
  std::vector<std::pair<std::int64_t, Digit>> merged(a.constraints().begin(), a.constraints().end());
  for (const auto& [index, digit] : b.constraints()) {
    const auto it = a.constraints().find(index);
    if (it == a.constraints().end()) {
      merged.emplace_back(index, digit);
    } else if (it->second != digit) {
      return EmptySet{};
    }
  }
  return CylinderSpec(a.prime(), merged);
}

CylinderSpec translate_cylinder(const CylinderSpec& c, std::int64_t offset) {
  std::vector<std::pair<std::int64_t, Digit>> moved;
  moved.reserve(c.size());
  for (const auto& [index, digit] : c.constraints()) moved.emplace_back(index + offset, digit);
  return CylinderSpec(c.prime(), moved);
}

TwoSidedWord shift2(const TwoSidedWord& w) { return w.shifted(); }

TwoSidedWord shift2(const TwoSidedWord& w, std::size_t k) {
  TwoSidedWord out = w;
  for (std::size_t i = 0; i < k; ++i) out = out.shifted();
  return out;
}

OneSidedWord shift1(const OneSidedWord& w) { return w.shifted(); }

PadicInt pi_Y(const OneSidedWord& w) {
  return PadicInt(w.prime(), std::vector<Digit>(w.digits().begin(), w.digits().end()));
}

BasePFraction pi_Z(Prime p, std::span<const Digit> neg) {
  return BasePFraction(p, std::vector<Digit>(neg.begin(), neg.end()));
}

SolenoidPoint pi(const TwoSidedWord& w) {
  const auto nonneg = w.nonneg_digits();
  return SolenoidPoint(PadicInt(w.prime(), std::vector<Digit>(nonneg.begin(), nonneg.end())),
                       BasePFraction(w.prime(), w.neg_digits()));
}

bool in_open_interval(const BasePFraction& x, std::uint64_t a, unsigned n) {
  if (x.precision() < n) {
    throw PrecisionExhausted("interval depth " + std::to_string(n) + " exceeds fraction precision " +
                             std::to_string(x.precision()));
  }
  const std::uint64_t width = checked_power(x.prime().value(), n);
  if (a >= width) throw InvalidArgument("interval numerator must be below p^n");
  std::uint64_t code = 0;
  for (unsigned j = 0; j < n; ++j) code = code * x.prime().value() + x.digits()[j];
  if (code != a) return false;
  // x == a/p^n exactly sits on the closed endpoint.
  const auto tail = x.digits().subspan(n);
  return std::any_of(tail.begin(), tail.end(), [](Digit d) { return d != 0; });
}

TwoSidedWord sample_uniform_word(std::uint64_t seed, Prime p, std::size_t L, std::size_t R) {
  DigitStream rng(seed);
  std::vector<Digit> nonneg(R);
  std::vector<Digit> neg(L);
  for (auto& d : nonneg) d = static_cast<Digit>(rng.uniform(p.value()));
  for (auto& d : neg) d = static_cast<Digit>(rng.uniform(p.value()));
  return TwoSidedWord(p, neg, nonneg);
}

}  // namespace padyn
