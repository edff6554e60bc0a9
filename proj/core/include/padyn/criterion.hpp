#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

/// Parameters of the vanishing criterion sum_{a=1}^{p-1} t_n(alpha eta_a) a^d mod p,
/// where eta_a is the Teichmuller lift of a.
class CriterionQuery {
 public:
  /// Throws InvalidArgument unless d is odd with 3 <= d <= p-2 and PrimeMismatch if
  /// alpha lives over another prime. Throws PrecisionExhausted if n >= precision(alpha).
  CriterionQuery(Prime p, unsigned d, PadicInt alpha, std::size_t n);

  [[nodiscard]] Prime prime() const noexcept { return p_; }
  [[nodiscard]] unsigned d() const noexcept { return d_; }
  [[nodiscard]] const PadicInt& alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }

 private:
  Prime p_;
  unsigned d_;
  PadicInt alpha_;
  std::size_t n_;
};

/// True for odd d with 3 <= d <= p-2.
[[nodiscard]] bool valid_criterion_exponent(Prime p, unsigned d) noexcept;

/// All valid exponents for p in increasing order (empty for p = 3).
[[nodiscard]] std::vector<unsigned> criterion_exponents(Prime p);

/// The Teichmuller lifts eta_1, ..., eta_{p-1} at precision N (index a-1 holds eta_a).
[[nodiscard]] std::vector<PadicInt> teichmuller_table(Prime p, std::size_t N);

[[nodiscard]] std::uint32_t criterion_sum(const CriterionQuery& q);

/// As above with precomputed lifts of precision >= n+1.
[[nodiscard]] std::uint32_t criterion_sum(const CriterionQuery& q, std::span<const PadicInt> lifts);

struct CriterionWitness {
  std::size_t alpha_index = 0;
  PadicInt alpha;
  std::size_t n = 0;
  std::uint32_t value = 0;
};

struct ScanResult {
  std::uint32_t p = 0;
  unsigned d = 0;
  std::optional<CriterionWitness> witness;  // empty means none found
  std::uint64_t alphas_scanned = 0;
  std::uint64_t evaluations = 0;
};

/// First (alpha, n) in alpha-major, n-minor order with a nonzero criterion sum.
/// Every alpha needs precision >= nMax+1. With threads > 1 the alphas are split
/// across workers and the earliest witness in scan order wins, so the result and
/// the counters match the sequential scan.
[[nodiscard]] ScanResult scan_criterion(Prime p, unsigned d, std::span<const PadicInt> alphas, std::size_t nMax,
                                        unsigned threads = 1);

struct StickelbergerEntry {
  std::uint64_t u = 0;
  std::uint32_t a = 0;
  std::uint64_t numerator = 0;  // s_n(u eta_a)
};

/// Coefficients s_n(u eta_a) / p^{n+1} for u in [1, p^{n+1}], u = 1 mod p, and a in [1, p-1].
struct StickelbergerElement {
  std::uint32_t p = 0;
  std::size_t n = 0;
  std::uint64_t denominator = 0;  // p^{n+1}
  std::vector<StickelbergerEntry> entries;  // u-major, then a

  [[nodiscard]] Rational coefficient(std::uint64_t u, std::uint32_t a) const;
};

/// Requires N >= n+1 and p^{n+1} < 2^63.
[[nodiscard]] StickelbergerElement stickelberger_element(Prime p, std::size_t n, std::size_t N);

}  // namespace padyn
