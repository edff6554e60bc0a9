#include "padyn/criterion.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

std::uint32_t powmod(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t sum_with_lifts(Prime p, unsigned d, const PadicInt& alpha, std::size_t n,
                             std::span<const PadicInt> lifts) {
  const std::uint32_t pv = p.value();
  if (lifts.size() != pv - 1) throw InvalidArgument("criterion needs all p-1 Teichmuller lifts");
  const PadicInt a_low = alpha.truncated(n + 1);
  std::uint64_t acc = 0;
  for (std::uint32_t a = 1; a < pv; ++a) {
    const PadicInt& eta = lifts[a - 1];
    if (eta.precision() < n + 1) throw PrecisionExhausted("Teichmuller lift precision below n+1");
    const Digit tn = (a_low * eta.truncated(n + 1)).digit(n);
    acc = (acc + static_cast<std::uint64_t>(tn) * powmod(a, d, pv)) % pv;
  }
  return static_cast<std::uint32_t>(acc);
}

// First n <= nMax with a nonzero sum, if any.
std::optional<std::pair<std::size_t, std::uint32_t>> first_nonzero(Prime p, unsigned d, const PadicInt& alpha,
                                                                   std::size_t nMax,
                                                                   std::span<const PadicInt> lifts) {
  for (std::size_t n = 0; n <= nMax; ++n) {
    const auto v = sum_with_lifts(p, d, alpha, n, lifts);
    if (v != 0) return std::make_pair(n, v);
  }
  return std::nullopt;
}

}  // namespace

bool valid_criterion_exponent(Prime p, unsigned d) noexcept {
  return d % 2 == 1 && d >= 3 && d + 2 <= p.value();
}

std::vector<unsigned> criterion_exponents(Prime p) {
  std::vector<unsigned> out;
  for (unsigned d = 3; d + 2 <= p.value(); d += 2) out.push_back(d);
  return out;
}

CriterionQuery::CriterionQuery(Prime p, unsigned d, PadicInt alpha, std::size_t n)
    : p_(p), d_(d), alpha_(std::move(alpha)), n_(n) {
  if (!valid_criterion_exponent(p, d)) {
    throw InvalidArgument("exponent d=" + std::to_string(d) + " must be odd with 3 <= d <= p-2");
  }
  require_same_prime(p, alpha_.prime(), "criterion query");
  if (n_ >= alpha_.precision()) {
    throw PrecisionExhausted("criterion digit index " + std::to_string(n_) + " needs precision " +
                             std::to_string(n_ + 1));
  }
}

std::vector<PadicInt> teichmuller_table(Prime p, std::size_t N) {
  std::vector<PadicInt> out;
  out.reserve(p.value() - 1);
  for (std::uint32_t a = 1; a < p.value(); ++a) out.push_back(teichmuller(a, p, N));
  return out;
}

std::uint32_t criterion_sum(const CriterionQuery& q) {
  const auto lifts = teichmuller_table(q.prime(), q.n() + 1);
  return criterion_sum(q, lifts);
}

std::uint32_t criterion_sum(const CriterionQuery& q, std::span<const PadicInt> lifts) {
  return sum_with_lifts(q.prime(), q.d(), q.alpha(), q.n(), lifts);
}

ScanResult scan_criterion(Prime p, unsigned d, std::span<const PadicInt> alphas, std::size_t nMax, unsigned threads) {
  if (!valid_criterion_exponent(p, d)) {
    throw InvalidArgument("exponent d=" + std::to_string(d) + " must be odd with 3 <= d <= p-2");
  }
  for (const auto& a : alphas) {
    require_same_prime(p, a.prime(), "criterion scan");
    if (a.precision() < nMax + 1) {
      throw PrecisionExhausted("criterion scan needs precision " + std::to_string(nMax + 1));
    }
  }
  const auto lifts = teichmuller_table(p, nMax + 1);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{kNone};
  std::vector<std::optional<std::pair<std::size_t, std::uint32_t>>> found(alphas.size());
  std::vector<std::exception_ptr> errors(alphas.size());
  auto run_one = [&](std::size_t i) {
    try {
      found[i] = first_nonzero(p, d, alphas[i], nMax, lifts);
      if (found[i]) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned workers =
      std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, alphas.size()))));
  if (workers == 1) {
    for (std::size_t i = 0; i < alphas.size() && best.load() == kNone; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        // Indices past the best witness so far cannot change the answer.
        for (std::size_t i = next++; i < alphas.size() && i < best.load(); i = next++) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  const std::size_t limit = std::min(best.load(), alphas.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  ScanResult res;
  res.p = p.value();
  res.d = d;
  const std::uint64_t per_alpha = nMax + 1;
  if (best.load() == kNone) {
    res.alphas_scanned = alphas.size();
    res.evaluations = alphas.size() * per_alpha;
  } else {
    const std::size_t i = best.load();
    const auto [n, value] = *found[i];
    res.witness = CriterionWitness{i, alphas[i], n, value};
    res.alphas_scanned = i + 1;
    res.evaluations = i * per_alpha + n + 1;
  }
  return res;
}

Rational StickelbergerElement::coefficient(std::uint64_t u, std::uint32_t a) const {
  for (const auto& e : entries) {
    if (e.u == u && e.a == a) return Rational(BigInt(e.numerator), BigInt(denominator));
  }
  throw InvalidArgument("no Stickelberger coefficient for u=" + std::to_string(u) + ", a=" + std::to_string(a));
}

StickelbergerElement stickelberger_element(Prime p, std::size_t n, std::size_t N) {
  if (N < n + 1) throw PrecisionExhausted("Stickelberger element needs precision >= n+1");
  if (n + 1 > 62) throw InvalidArgument("p^{n+1} must fit in 63 bits");
  const std::uint64_t q = checked_power(p.value(), static_cast<unsigned>(n + 1));
  if (q > (std::uint64_t{1} << 63)) throw InvalidArgument("p^{n+1} must fit in 63 bits");
  if (q / p.value() > 10'000'000 / (p.value() - 1)) throw InvalidArgument("Stickelberger table too large");
  const auto lifts = teichmuller_table(p, N);

  StickelbergerElement el;
  el.p = p.value();
  el.n = n;
  el.denominator = q;
  for (std::uint64_t u = 1; u <= q; u += p.value()) {
    const PadicInt pu = from_integer(u, p, N);
    for (std::uint32_t a = 1; a < p.value(); ++a) {
      const BigInt s = (pu * lifts[a - 1]).partial_sum(n);
      el.entries.push_back({u, a, static_cast<std::uint64_t>(s)});
    }
  }
  return el;
}

}  // namespace padyn
