#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/solenoid.hpp"
#include "padyn/symbolic.hpp"

namespace padyn {

/// M points of [0, 1)^dim, row-major.
///
/// When codes is non-empty it holds, for every coordinate, the exact integer
/// formed by its leading code_digits base-code_base digits. Box counting uses
/// the codes instead of the rounded doubles.
struct SequenceSample {
  std::size_t dim = 1;
  std::vector<double> values;
  bool exact_source = false;
  std::uint32_t code_base = 0;
  unsigned code_digits = 0;
  std::vector<std::uint64_t> codes;

  [[nodiscard]] std::size_t length() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
  [[nodiscard]] double at(std::size_t n, std::size_t i) const { return values[n * dim + i]; }
};

/// The rows (s_n(gamma_1)/p^{n+1}, ..., s_n(gamma_r)/p^{n+1}) for n = 0..M-1,
/// where gamma_i = alpha * beta_i.
class PartialSumSequence {
 public:
  /// Requires M >= 1 and precision(gamma_i) >= M (PrecisionExhausted otherwise).
  PartialSumSequence(std::vector<PadicInt> gammas, std::size_t M);

  [[nodiscard]] Prime prime() const noexcept { return gammas_.front().prime(); }
  [[nodiscard]] std::size_t length() const noexcept { return M_; }
  [[nodiscard]] std::size_t dim() const noexcept { return gammas_.size(); }
  [[nodiscard]] const std::vector<PadicInt>& gammas() const noexcept { return gammas_; }

  /// Entry (n, i) as an exact base-p fraction with digits t_n, ..., t_0.
  [[nodiscard]] BasePFraction exact(std::size_t n, std::size_t i) const;
  [[nodiscard]] Rational exact_rational(std::size_t n, std::size_t i) const;

  /// Doubles plus exact leading-digit codes.
  [[nodiscard]] SequenceSample sample() const;

 private:
  std::vector<PadicInt> gammas_;
  std::size_t M_;
};

[[nodiscard]] PartialSumSequence partial_sum_sequence(const PadicInt& alpha, const std::vector<PadicInt>& betas,
                                                      std::size_t M);

/// max_i max(i/M - x_(i), x_(i) - (i-1)/M) over the sorted sample. Requires M >= 1.
[[nodiscard]] double star_discrepancy_1d(std::vector<double> xs);

inline constexpr std::uint64_t kMaxBoxes = 10'000'000;

/// Occupancy of the p^{dim*k} boxes prod [a_i/p^k, (a_i+1)/p^k), indexed with the
/// first coordinate most significant. Throws DepthTooLarge above kMaxBoxes.
[[nodiscard]] std::vector<std::uint64_t> box_counts(const SequenceSample& sample, Prime p, unsigned k);

/// max over boxes of |count/M - p^{-dim*k}|.
[[nodiscard]] double box_discrepancy(const SequenceSample& sample, Prime p, unsigned k);

/// (1/M) sum_n exp(2 pi i k.x_n). Throws ZeroVector for k = 0.
[[nodiscard]] std::complex<double> weyl_average(const SequenceSample& sample, std::span<const std::int64_t> k);

/// (freq - mu) / sqrt(mu (1 - mu) / trials), or 0 when the variance vanishes.
[[nodiscard]] double z_score(double frequency, double expected, std::uint64_t trials);

struct CylinderStat {
  CylinderSpec spec;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double frequency = 0.0;
  double expected = 0.0;
  double z = 0.0;
};

/// Fraction of words in the cylinder and its z-score against p^{-|c|}.
[[nodiscard]] CylinderStat cylinder_frequency(std::span<const OneSidedWord> words, const CylinderSpec& c);

/// The digit-shift orbit alpha, T(alpha), ..., T^{M-1}(alpha) as words sharing storage.
[[nodiscard]] std::vector<OneSidedWord> orbit_words(const PadicInt& alpha, std::size_t M);

struct Thresholds {
  double z = 5.0;
  double dstar = 0.02;
};

struct WeylStat {
  std::vector<std::int64_t> k;
  std::complex<double> average;
  double magnitude = 0.0;
};

struct GenericityReport {
  std::uint32_t p = 0;
  std::size_t M = 0;
  unsigned depth = 0;
  Thresholds thresholds;
  std::vector<CylinderStat> cylinders;
  double star_discrepancy = 0.0;
  std::vector<WeylStat> weyl;
  double max_abs_z = 0.0;
  bool pass = false;
};

/// Recomputes the verdict from the stored statistics and thresholds.
[[nodiscard]] bool verdict(const GenericityReport& report);

/// Runs M steps of the digit shift from alpha and tests every cylinder anchored
/// at index 0 of depth 1..maxDepth, plus the star discrepancy of the values
/// s_n(alpha)/p^{n+1}. Weyl averages for k = 1..3 are reported but not judged.
/// Requires precision(alpha) >= M + maxDepth.
[[nodiscard]] GenericityReport genericity_test(const PadicInt& alpha, std::size_t M, unsigned maxDepth,
                                               Thresholds thresholds = {});

struct JointThresholds {
  double z = 5.0;
  double box = 0.005;
  unsigned box_depth = 2;
};

struct JointCylinderStat {
  std::vector<CylinderSpec> specs;  // one per coordinate, possibly empty
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double frequency = 0.0;
  double expected = 0.0;
  double z = 0.0;
};

struct JointReport {
  std::uint32_t p = 0;
  std::size_t r = 0;
  std::size_t M = 0;
  unsigned depth = 0;
  JointThresholds thresholds;
  std::vector<JointCylinderStat> cylinders;
  double box_discrepancy = 0.0;
  std::vector<WeylStat> weyl;
  double max_abs_z = 0.0;
  bool pass = false;
};

[[nodiscard]] bool verdict(const JointReport& report);

/// The r-fold digit shift on (gamma_1, ..., gamma_r): product cylinders anchored
/// at 0 with 1..maxDepth constrained digits in total, and the box discrepancy of
/// the partial-sum rows at thresholds.box_depth. Weyl averages over
/// 0 < max|k_i| <= 3 are reported but not judged.
[[nodiscard]] JointReport joint_genericity_test(const std::vector<PadicInt>& gammas, std::size_t M, unsigned maxDepth,
                                                JointThresholds thresholds = {});

/// (1/M) sum_{n=1..M} chi_{m,t}(T^n(gamma_1, 0), ..., T^n(gamma_r, 0)), evaluated by
/// first forming sigma = sum m_j gamma_j and then reading s_{n+t-1}(sigma)/p^{n+t}.
/// The real parts of P must be zero. Requires precision >= M + t.
[[nodiscard]] std::complex<double> character_average(const ProductPoint& P, const CharacterIndex& chi, std::size_t M);

/// The same average with each component advanced separately and the phases
/// combined afterwards.
[[nodiscard]] std::complex<double> character_average_componentwise(const ProductPoint& P, const CharacterIndex& chi,
                                                                   std::size_t M);

struct SigmaResult {
  std::vector<std::int64_t> m;
  std::optional<std::size_t> valuation;  // of sigma = sum m_i beta_i; empty if sigma vanishes at this precision
  GenericityReport report;
};

struct ReductionConfig {
  unsigned depth = 3;
  Thresholds single;
  JointThresholds joint;
  unsigned threads = 1;
};

struct ReductionReport {
  std::size_t r = 0;
  std::int64_t B = 0;
  JointReport joint;
  std::vector<SigmaResult> sigmas;
  bool all_sigma_pass = false;
  bool agree = false;
};

/// Runs genericity_test on sigma * alpha for every m in enumerate_V(r, B) and the
/// joint test on (alpha beta_1, ..., alpha beta_r), and reports whether the two
/// sides reach the same verdict. Results do not depend on the thread count.
[[nodiscard]] ReductionReport reduction_check(const PadicInt& alpha, const std::vector<PadicInt>& betas, std::int64_t B,
                                              std::size_t M, const ReductionConfig& config = {});

}  // namespace padyn
