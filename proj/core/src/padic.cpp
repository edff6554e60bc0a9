#include "padyn/padic.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "padyn/errors.hpp"
#include "padyn/rng.hpp"

namespace padyn {

namespace {

__extension__ typedef unsigned __int128 u128;

void require_known(std::size_t n, std::size_t precision, const char* what) {
  if (n >= precision) {
    throw PrecisionExhausted(std::string(what) + ": index " + std::to_string(n) + " is beyond precision " +
                             std::to_string(precision));
  }
}

std::size_t significant_length(std::span<const Digit> d) {
  std::size_t n = d.size();
  while (n > 0 && d[n - 1] == 0) --n;
  return n;
}

template <class Acc>
std::vector<Digit> propagate_carries(const std::vector<Acc>& coef, std::uint32_t p) {
  std::vector<Digit> out(coef.size());
  Acc carry = 0;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    const Acc v = coef[k] + carry;
    out[k] = static_cast<Digit>(v % p);
    carry = v / p;
  }
  return out;
}

template <class Acc>
std::vector<Digit> schoolbook(std::span<const Digit> a, std::span<const Digit> b, std::size_t n, std::uint32_t p) {
  std::vector<Acc> coef(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    const Acc ai = a[i];
    const std::size_t jmax = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j) coef[i + j] += ai * b[j];
  }
  return propagate_carries(coef, p);
}

// Kronecker substitution: each digit sits in its own Word-sized slot, the slot
// width exceeding every convolution coefficient, so one big-integer product
// yields all coefficients at once.
template <class Word>
std::vector<Digit> kronecker(std::span<const Digit> a, std::span<const Digit> b, std::size_t n, std::uint32_t p) {
  const std::vector<Word> wa(a.begin(), a.end());
  const std::vector<Word> wb(b.begin(), b.end());
  mpz_t za, zb, zc;
  mpz_inits(za, zb, zc, nullptr);
  mpz_import(za, wa.size(), -1, sizeof(Word), 0, 0, wa.data());
  mpz_import(zb, wb.size(), -1, sizeof(Word), 0, 0, wb.data());
  mpz_mul(zc, za, zb);
  mpz_tdiv_r_2exp(zc, zc, static_cast<mp_bitcnt_t>(n) * 8 * sizeof(Word));
  std::vector<Word> coef(n, 0);
  std::size_t count = 0;
  mpz_export(coef.data(), &count, -1, sizeof(Word), 0, 0, zc);
  mpz_clears(za, zb, zc, nullptr);
  return propagate_carries(coef, p);
}

// Bit-packed variant for coefficients below 2^62: slots are only as wide as
// the largest possible coefficient, which keeps the big product small.
std::vector<Digit> kronecker_packed(std::span<const Digit> a, std::span<const Digit> b, std::size_t n, std::uint32_t p,
                                    unsigned bits) {
  static_assert(sizeof(mp_limb_t) == 8, "64-bit GMP limbs expected");
  auto pack = [bits](std::span<const Digit> d, mpz_t z) {
    const std::size_t limbs = (d.size() * bits + 63) / 64;
    mp_limb_t* w = mpz_limbs_write(z, static_cast<mp_size_t>(limbs));
    std::fill(w, w + limbs, mp_limb_t{0});
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::size_t bit = i * bits;
      const std::size_t li = bit / 64;
      const unsigned sh = bit % 64;
      w[li] |= static_cast<mp_limb_t>(d[i]) << sh;
      if (sh + bits > 64 && li + 1 < limbs) w[li + 1] |= static_cast<mp_limb_t>(d[i]) >> (64 - sh);
    }
    mp_size_t used = static_cast<mp_size_t>(limbs);
    while (used > 0 && w[used - 1] == 0) --used;
    mpz_limbs_finish(z, used);
  };
  mpz_t za, zb, zc;
  mpz_inits(za, zb, zc, nullptr);
  pack(a, za);
  pack(b, zb);
  mpz_mul(zc, za, zb);
  const mp_limb_t* w = mpz_limbs_read(zc);
  const std::size_t size = mpz_size(zc);
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::vector<std::uint64_t> coef(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t bit = k * bits;
    const std::size_t li = bit / 64;
    if (li >= size) break;
    const unsigned sh = bit % 64;
    std::uint64_t v = w[li] >> sh;
    if (sh + bits > 64 && li + 1 < size) v |= w[li + 1] << (64 - sh);
    coef[k] = v & mask;
  }
  mpz_clears(za, zb, zc, nullptr);
  return propagate_carries(coef, p);
}

constexpr std::size_t kSchoolbookLimit = 48;

// Low n digits of a*b, with a and b read as plain integers.
std::vector<Digit> multiply_low(std::span<const Digit> a, std::span<const Digit> b, std::size_t n, std::uint32_t p) {
  a = a.first(std::min(significant_length(a), n));
  b = b.first(std::min(significant_length(b), n));
  if (a.empty() || b.empty()) return std::vector<Digit>(n, 0);

  const u128 pm1 = p - 1;
  const u128 bound = static_cast<u128>(std::min(a.size(), b.size())) * pm1 * pm1;
  // Carry propagation needs headroom of about bound * p / (p - 1).
  const bool fits64 = bound < (static_cast<u128>(1) << 63);

  if (std::min(a.size(), b.size()) <= kSchoolbookLimit) {
    return fits64 ? schoolbook<std::uint64_t>(a, b, n, p) : schoolbook<u128>(a, b, n, p);
  }
  if (bound < (static_cast<u128>(1) << 62)) {
    const auto bits = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(bound)));
    return kronecker_packed(a, b, n, p, bits);
  }
  return kronecker<u128>(a, b, n, p);
}

std::vector<Digit> digits_of(BigInt v, std::uint32_t p, std::size_t N) {
  std::vector<Digit> d(N, 0);
  // Peel digits in chunks of p^k < 2^32 to keep big-integer divisions rare.
  unsigned k = 1;
  std::uint64_t chunk = p;
  while (chunk * p < (1ULL << 32)) {
    chunk *= p;
    ++k;
  }
  std::size_t i = 0;
  while (i < N && v != 0) {
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(v, BigInt(chunk), q, r);
    auto rem = static_cast<std::uint64_t>(r);
    for (unsigned j = 0; j < k && i < N; ++j, ++i) {
      d[i] = static_cast<Digit>(rem % p);
      rem /= p;
    }
    v = std::move(q);
  }
  return d;
}

PadicInt extended(const PadicInt& a, std::size_t N) {
  std::vector<Digit> d(a.digits().begin(), a.digits().end());
  d.resize(N, 0);
  return PadicInt(a.prime(), std::move(d));
}

std::uint32_t inverse_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

DigitBuffer::DigitBuffer(std::vector<Digit> digits)
    : data_(std::make_shared<const std::vector<Digit>>(std::move(digits))), offset_(0), size_(data_->size()) {}

DigitBuffer DigitBuffer::drop_front(std::size_t k) const noexcept {
  DigitBuffer r = *this;
  r.offset_ += k;
  r.size_ -= k;
  return r;
}

DigitBuffer DigitBuffer::take_front(std::size_t k) const noexcept {
  DigitBuffer r = *this;
  r.size_ = k;
  return r;
}

PadicInt::PadicInt(Prime p, std::vector<Digit> digits) : p_(p) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= p.value()) {
      throw InvalidDigit("digit " + std::to_string(digits[i]) + " at index " + std::to_string(i) +
                         " is not below p = " + std::to_string(p.value()));
    }
  }
  buf_ = DigitBuffer(std::move(digits));
}

PadicInt PadicInt::zero(Prime p, std::size_t precision) { return PadicInt(p, std::vector<Digit>(precision, 0)); }

PadicInt PadicInt::one(Prime p, std::size_t precision) {
  std::vector<Digit> d(precision, 0);
  if (precision > 0) d[0] = 1;
  return PadicInt(p, std::move(d));
}

Digit PadicInt::digit(std::size_t n) const {
  require_known(n, precision(), "digit");
  return buf_[n];
}

BigInt PadicInt::partial_sum(std::size_t n) const {
  require_known(n, precision(), "partial_sum");
  BigInt s = 0;
  for (std::size_t i = n + 1; i-- > 0;) {
    s *= p_.value();
    s += buf_[i];
  }
  return s;
}

BigInt PadicInt::to_integer() const { return precision() == 0 ? BigInt(0) : partial_sum(precision() - 1); }

PadicInt PadicInt::shifted(std::size_t k) const {
  if (k > precision()) {
    throw PrecisionExhausted("shift by " + std::to_string(k) + " exceeds precision " + std::to_string(precision()));
  }
  return PadicInt(p_, buf_.drop_front(k));
}

PadicInt PadicInt::truncated(std::size_t n) const {
  if (n > precision()) {
    throw PrecisionExhausted("cannot truncate to " + std::to_string(n) + " digits from " +
                             std::to_string(precision()));
  }
  return PadicInt(p_, buf_.take_front(n));
}

bool PadicInt::is_zero() const noexcept {
  const auto d = digits();
  return std::all_of(d.begin(), d.end(), [](Digit x) { return x == 0; });
}

bool operator==(const PadicInt& a, const PadicInt& b) noexcept {
  if (a.p_ != b.p_ || a.precision() != b.precision()) return false;
  const auto da = a.digits();
  const auto db = b.digits();
  return std::equal(da.begin(), da.end(), db.begin());
}

PadicInt from_integer(std::uint64_t v, Prime p, std::size_t N) {
  if (N == 0) throw InvalidArgument("from_integer: precision must be at least 1");
  std::vector<Digit> d(N, 0);
  for (std::size_t i = 0; i < N && v != 0; ++i) {
    d[i] = static_cast<Digit>(v % p.value());
    v /= p.value();
  }
  return PadicInt(p, std::move(d));
}

PadicInt from_integer(const BigInt& v, Prime p, std::size_t N) {
  if (N == 0) throw InvalidArgument("from_integer: precision must be at least 1");
  if (v < 0) throw InvalidArgument("from_integer: value must be non-negative");
  return PadicInt(p, digits_of(v, p.value(), N));
}

PadicInt from_signed(const BigInt& v, Prime p, std::size_t N) {
  if (v >= 0) return from_integer(v, p, N);
  return neg(from_integer(BigInt(-v), p, N));
}

PadicInt add(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a.prime(), b.prime(), "add");
  const std::uint32_t p = a.prime().value();
  const std::size_t n = std::min(a.precision(), b.precision());
  const auto da = a.digits();
  const auto db = b.digits();
  std::vector<Digit> out(n);
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(da[i]) + db[i] + carry;
    carry = s >= p ? 1 : 0;
    out[i] = static_cast<Digit>(s - (carry ? p : 0));
  }
  return PadicInt(a.prime(), std::move(out));
}

PadicInt neg(const PadicInt& a) {
  const std::uint32_t p = a.prime().value();
  const auto d = a.digits();
  std::vector<Digit> out(d.size(), 0);
  std::size_t i = 0;
  while (i < d.size() && d[i] == 0) ++i;
  if (i < d.size()) {
    out[i] = p - d[i];
    for (++i; i < d.size(); ++i) out[i] = p - 1 - d[i];
  }
  return PadicInt(a.prime(), std::move(out));
}

PadicInt sub(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a.prime(), b.prime(), "sub");
  return add(a, neg(b));
}

PadicInt mul(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a.prime(), b.prime(), "mul");
  const std::size_t n = std::min(a.precision(), b.precision());
  return PadicInt(a.prime(), multiply_low(a.digits(), b.digits(), n, a.prime().value()));
}

PadicInt scale(const PadicInt& a, std::int64_t k) {
  const std::uint32_t p = a.prime().value();
  const std::uint64_t mag = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  const auto d = a.digits();
  std::vector<Digit> out(d.size());
  u128 carry = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const u128 v = static_cast<u128>(d[i]) * mag + carry;
    out[i] = static_cast<Digit>(v % p);
    carry = v / p;
  }
  PadicInt r(a.prime(), std::move(out));
  return k < 0 ? neg(r) : r;
}

PadicInt pow(const PadicInt& a, std::uint64_t e) {
  PadicInt result = PadicInt::one(a.prime(), a.precision());
  PadicInt base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

ValUnit val_unit(const PadicInt& sigma) {
  const auto d = sigma.digits();
  const auto it = std::find_if(d.begin(), d.end(), [](Digit x) { return x != 0; });
  if (it == d.end()) {
    throw AllDigitsZero("val_unit: all " + std::to_string(d.size()) + " known digits are zero");
  }
  const auto val = static_cast<std::size_t>(it - d.begin());
  return ValUnit{val, sigma.shifted(val)};
}

PadicInt recompose(const ValUnit& vu) {
  std::vector<Digit> d(vu.val, 0);
  const auto u = vu.unit.digits();
  d.insert(d.end(), u.begin(), u.end());
  return PadicInt(vu.unit.prime(), std::move(d));
}

PadicInt inverse_unit(const PadicInt& u) {
  const std::size_t N = u.precision();
  if (N == 0) throw PrecisionExhausted("inverse_unit: no known digits");
  if (u.digit(0) == 0) throw NotAUnit("inverse_unit: t_0 is zero");
  const Prime p = u.prime();
  // Newton: x <- x (2 - u x) doubles the number of correct digits.
  PadicInt x = from_integer(inverse_mod_p(u.digit(0), p.value()), p, 1);
  std::size_t k = 1;
  while (k < N) {
    const std::size_t k2 = std::min(2 * k, N);
    const PadicInt xk = extended(x, k2);
    const PadicInt e = mul(u.truncated(k2), xk);
    x = mul(xk, sub(from_integer(2, p, k2), e));
    k = k2;
  }
  return x;
}

PadicInt teichmuller_by_frobenius(std::uint32_t a, Prime p, std::size_t N) {
  if (a < 1 || a >= p.value()) throw InvalidArgument("teichmuller: residue must lie in [1, p-1]");
  PadicInt x = from_integer(a, p, N);
  // x -> x^p gains one correct digit per step, so N steps always suffice.
  for (std::size_t i = 0; i <= N; ++i) {
    PadicInt y = pow(x, p.value());
    if (y == x) return x;
    x = std::move(y);
  }
  throw Error("teichmuller_by_frobenius: iteration did not stabilise");
}

PadicInt teichmuller_by_newton(std::uint32_t a, Prime p, std::size_t N) {
  if (a < 1 || a >= p.value()) throw InvalidArgument("teichmuller: residue must lie in [1, p-1]");
  if (N == 0) return PadicInt(p, std::vector<Digit>{});
  const PadicInt inv_pm1 = inverse_unit(from_integer(p.value() - 1, p, N));
  // x <- x - x (x^{p-1} - 1) / (p - 1) doubles the number of correct digits,
  // so each round only needs twice the precision of the previous one.
  PadicInt x = from_integer(a, p, 1);
  std::size_t k = 1;
  while (k < N) {
    const std::size_t k2 = std::min(2 * k, N);
    const PadicInt xk = extended(x, k2);
    const PadicInt err = sub(pow(xk, p.value() - 1), PadicInt::one(p, k2));
    x = sub(xk, mul(mul(xk, err), inv_pm1.truncated(k2)));
    k = k2;
  }
  if (!(pow(x, p.value() - 1) == PadicInt::one(p, N))) {
    throw Error("teichmuller_by_newton: iteration did not converge");
  }
  return x;
}

PadicInt teichmuller(std::uint32_t a, Prime p, std::size_t N) {
  return N <= kFrobeniusCutoff ? teichmuller_by_frobenius(a, p, N) : teichmuller_by_newton(a, p, N);
}

PadicInt random_padic(std::uint64_t seed, Prime p, std::size_t N) {
  DigitStream stream(seed);
  std::vector<Digit> d(N);
  for (auto& x : d) x = static_cast<Digit>(stream.uniform(p.value()));
  return PadicInt(p, std::move(d));
}

}  // namespace padyn
