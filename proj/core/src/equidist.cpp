#include "padyn/equidist.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "padyn/detail/phase.hpp"
#include "padyn/errors.hpp"

namespace padyn {

namespace {

std::complex<double> unit_circle(double theta) {
  const double angle = 2.0 * std::numbers::pi * theta;
  return {std::cos(angle), std::sin(angle)};
}

void require_precision(const PadicInt& a, std::size_t need, const char* what) {
  if (a.precision() < need) {
    throw PrecisionExhausted(std::string(what) + " needs precision " + std::to_string(need) + " but has " +
                             std::to_string(a.precision()));
  }
}

// Phase of s_{top}(gamma) / p^{top+1}, whose digits are t_top, ..., t_0.
detail::Phase partial_sum_phase(const detail::PhaseScale& scale, std::span<const Digit> digits, std::size_t top) {
  return detail::read_phase(scale, [&](std::size_t i) { return digits[top - i]; }, top + 1);
}

std::uint64_t power(std::uint32_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > kMaxBoxes) throw DepthTooLarge("p^" + std::to_string(k) + " exceeds the box budget");
    r *= p;
  }
  return r;
}

std::uint64_t unchecked_power(std::uint32_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

std::vector<WeylStat> weyl_stats(const SequenceSample& sample, const std::vector<std::vector<std::int64_t>>& ks) {
  std::vector<WeylStat> out;
  out.reserve(ks.size());
  for (const auto& k : ks) {
    const auto avg = weyl_average(sample, k);
    out.push_back({k, avg, std::abs(avg)});
  }
  return out;
}

// Counts the M windows digits[n..n+k-1] by code sum_j t_{n+j} p^j.
std::vector<std::uint64_t> window_counts(std::span<const Digit> digits, std::size_t M, unsigned k, std::uint32_t p) {
  std::vector<std::uint64_t> counts(power(p, k), 0);
  for (std::size_t n = 0; n < M; ++n) {
    std::uint64_t code = 0;
    for (unsigned j = k; j-- > 0;) code = code * p + digits[n + j];
    ++counts[code];
  }
  return counts;
}

template <class Stat>
void fill_stat(Stat& s, std::uint64_t hits, std::uint64_t trials, double expected) {
  s.hits = hits;
  s.trials = trials;
  s.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  s.expected = expected;
  s.z = z_score(s.frequency, expected, trials);
}

}  // namespace

PartialSumSequence::PartialSumSequence(std::vector<PadicInt> gammas, std::size_t M) : gammas_(std::move(gammas)), M_(M) {
  if (gammas_.empty()) throw InvalidArgument("partial-sum sequence needs at least one coordinate");
  if (M_ == 0) throw InvalidArgument("partial-sum sequence needs length M >= 1");
  for (const auto& g : gammas_) {
    require_same_prime(gammas_.front().prime(), g.prime(), "partial-sum sequence");
    require_precision(g, M_, "partial-sum sequence");
  }
}

BasePFraction PartialSumSequence::exact(std::size_t n, std::size_t i) const {
  if (n >= M_ || i >= gammas_.size()) throw InvalidArgument("partial-sum sequence entry out of range");
  const auto d = gammas_[i].digits().first(n + 1);
  return BasePFraction(prime(), std::vector<Digit>(d.rbegin(), d.rend()));
}

Rational PartialSumSequence::exact_rational(std::size_t n, std::size_t i) const {
  if (n >= M_ || i >= gammas_.size()) throw InvalidArgument("partial-sum sequence entry out of range");
  BigInt den = 1;
  for (std::size_t j = 0; j <= n; ++j) den *= prime().value();
  return Rational(gammas_[i].partial_sum(n), den);
}

SequenceSample PartialSumSequence::sample() const {
  const auto scale = detail::phase_scale(prime().value());
  SequenceSample s;
  s.dim = gammas_.size();
  s.exact_source = true;
  s.code_base = prime().value();
  s.code_digits = scale.head_digits;
  s.values.resize(M_ * s.dim);
  s.codes.resize(M_ * s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) {
    const auto digits = gammas_[i].digits();
    for (std::size_t n = 0; n < M_; ++n) {
      const auto ph = partial_sum_phase(scale, digits, n);
      s.values[n * s.dim + i] = detail::phase_value(scale, ph);
      s.codes[n * s.dim + i] = ph.head;
    }
  }
  return s;
}

PartialSumSequence partial_sum_sequence(const PadicInt& alpha, const std::vector<PadicInt>& betas, std::size_t M) {
  std::vector<PadicInt> gammas;
  gammas.reserve(betas.size());
  for (const auto& b : betas) gammas.push_back(alpha * b);
  return PartialSumSequence(std::move(gammas), M);
}

double star_discrepancy_1d(std::vector<double> xs) {
  if (xs.empty()) throw InvalidArgument("star discrepancy of an empty sample");
  std::sort(xs.begin(), xs.end());
  const auto M = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lo = static_cast<double>(i) / M;
    const double hi = static_cast<double>(i + 1) / M;
    d = std::max({d, hi - xs[i], xs[i] - lo});
  }
  return d;
}

std::vector<std::uint64_t> box_counts(const SequenceSample& sample, Prime p, unsigned k) {
  if (sample.dim == 0 || sample.length() == 0) throw InvalidArgument("box counts of an empty sample");
  const std::uint64_t side = power(p.value(), k);
  std::uint64_t boxes = 1;
  for (std::size_t i = 0; i < sample.dim; ++i) {
    if (boxes > kMaxBoxes / side) {
      throw DepthTooLarge("p^(dim*k) boxes exceed the budget of " + std::to_string(kMaxBoxes));
    }
    boxes *= side;
  }
  const bool use_codes = !sample.codes.empty() && sample.code_base == p.value() && sample.code_digits >= k;
  const std::uint64_t drop = use_codes ? unchecked_power(p.value(), sample.code_digits - k) : 1;
  std::vector<std::uint64_t> counts(boxes, 0);
  for (std::size_t n = 0; n < sample.length(); ++n) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < sample.dim; ++i) {
      std::uint64_t a = 0;
      if (use_codes) {
        a = sample.codes[n * sample.dim + i] / drop;
      } else {
        const double v = std::floor(sample.at(n, i) * static_cast<double>(side));
        a = v <= 0.0 ? 0 : std::min(static_cast<std::uint64_t>(v), side - 1);
      }
      index = index * side + a;
    }
    ++counts[index];
  }
  return counts;
}

double box_discrepancy(const SequenceSample& sample, Prime p, unsigned k) {
  const auto counts = box_counts(sample, p, k);
  const double volume = 1.0 / static_cast<double>(counts.size());
  const auto M = static_cast<double>(sample.length());
  double d = 0.0;
  for (auto c : counts) d = std::max(d, std::abs(static_cast<double>(c) / M - volume));
  return d;
}

std::complex<double> weyl_average(const SequenceSample& sample, std::span<const std::int64_t> k) {
  if (std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; })) {
    throw ZeroVector("Weyl frequency vector is zero");
  }
  if (k.size() != sample.dim) throw InvalidArgument("Weyl frequency length does not match sample dimension");
  if (sample.length() == 0) throw InvalidArgument("Weyl average of an empty sample");
  std::complex<double> sum = 0.0;
  for (std::size_t n = 0; n < sample.length(); ++n) {
    double theta = 0.0;
    for (std::size_t i = 0; i < sample.dim; ++i) {
      const double term = static_cast<double>(k[i]) * sample.at(n, i);
      theta += term - std::floor(term);
    }
    sum += unit_circle(theta - std::floor(theta));
  }
  return sum / static_cast<double>(sample.length());
}

double z_score(double frequency, double expected, std::uint64_t trials) {
  const double var = expected * (1.0 - expected) / static_cast<double>(trials);
  if (!(var > 0.0)) return 0.0;
  return (frequency - expected) / std::sqrt(var);
}

CylinderStat cylinder_frequency(std::span<const OneSidedWord> words, const CylinderSpec& c) {
  if (words.empty()) throw InvalidArgument("cylinder frequency over no words");
  std::uint64_t hits = 0;
  for (const auto& w : words) hits += cylinder_contains(w, c) ? 1 : 0;
  CylinderStat s{c, 0, 0, 0.0, 0.0, 0.0};
  fill_stat(s, hits, words.size(), std::pow(static_cast<double>(c.prime().value()), -static_cast<double>(c.size())));
  return s;
}

std::vector<OneSidedWord> orbit_words(const PadicInt& alpha, std::size_t M) {
  require_precision(alpha, M, "orbit of length M");
  std::vector<OneSidedWord> out;
  out.reserve(M);
  for (std::size_t n = 0; n < M; ++n) out.push_back(OneSidedWord::from_padic(alpha.shifted(n)));
  return out;
}

bool verdict(const GenericityReport& report) {
  const bool z_ok = std::all_of(report.cylinders.begin(), report.cylinders.end(),
                                [&](const CylinderStat& s) { return std::abs(s.z) <= report.thresholds.z; });
  return z_ok && report.star_discrepancy <= report.thresholds.dstar;
}

GenericityReport genericity_test(const PadicInt& alpha, std::size_t M, unsigned maxDepth, Thresholds thresholds) {
  if (M == 0) throw InvalidArgument("genericity test needs M >= 1");
  if (maxDepth == 0) throw InvalidArgument("genericity test needs depth >= 1");
  require_precision(alpha, M + maxDepth, "genericity test");
  const std::uint32_t p = alpha.prime().value();
  std::uint64_t spec_total = 0;
  for (unsigned k = 1; k <= maxDepth; ++k) spec_total += power(p, k);
  if (spec_total > kMaxBoxes) throw DepthTooLarge("too many cylinders at this depth");

  GenericityReport rep;
  rep.p = p;
  rep.M = M;
  rep.depth = maxDepth;
  rep.thresholds = thresholds;
  rep.cylinders.reserve(spec_total);
  const auto digits = alpha.digits();
  for (unsigned k = 1; k <= maxDepth; ++k) {
    const auto counts = window_counts(digits, M, k, p);
    const double expected = std::pow(static_cast<double>(p), -static_cast<double>(k));
    for (std::uint64_t code = 0; code < counts.size(); ++code) {
      std::vector<std::pair<std::int64_t, Digit>> cons;
      std::uint64_t c = code;
      for (unsigned j = 0; j < k; ++j, c /= p) cons.emplace_back(j, static_cast<Digit>(c % p));
      CylinderStat s{CylinderSpec(alpha.prime(), cons), 0, 0, 0.0, 0.0, 0.0};
      fill_stat(s, counts[code], M, expected);
      rep.max_abs_z = std::max(rep.max_abs_z, std::abs(s.z));
      rep.cylinders.push_back(std::move(s));
    }
  }

  const auto sample = PartialSumSequence({alpha}, M).sample();
  rep.star_discrepancy = star_discrepancy_1d(sample.values);
  rep.weyl = weyl_stats(sample, {{1}, {2}, {3}});
  rep.pass = verdict(rep);
  return rep;
}

bool verdict(const JointReport& report) {
  const bool z_ok = std::all_of(report.cylinders.begin(), report.cylinders.end(),
                                [&](const JointCylinderStat& s) { return std::abs(s.z) <= report.thresholds.z; });
  return z_ok && report.box_discrepancy <= report.thresholds.box;
}

JointReport joint_genericity_test(const std::vector<PadicInt>& gammas, std::size_t M, unsigned maxDepth,
                                  JointThresholds thresholds) {
  if (gammas.empty()) throw InvalidArgument("joint test needs at least one coordinate");
  if (M == 0) throw InvalidArgument("joint test needs M >= 1");
  if (maxDepth == 0) throw InvalidArgument("joint test needs depth >= 1");
  const Prime prime = gammas.front().prime();
  const std::uint32_t p = prime.value();
  for (const auto& g : gammas) {
    require_same_prime(prime, g.prime(), "joint test");
    require_precision(g, M + maxDepth, "joint test");
  }
  const std::size_t r = gammas.size();

  JointReport rep;
  rep.p = p;
  rep.r = r;
  rep.M = M;
  rep.depth = maxDepth;
  rep.thresholds = thresholds;

  // Depth tuples (d_1, ..., d_r) with 1 <= sum <= maxDepth, lexicographic.
  std::vector<unsigned> d(r, 0);
  while (true) {
    std::size_t j = r;
    while (j > 0 && d[j - 1] == maxDepth) {
      d[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
    ++d[j - 1];
    unsigned total = 0;
    for (auto v : d) total += v;
    if (total == 0 || total > maxDepth) continue;

    std::vector<std::uint64_t> counts(power(p, total), 0);
    for (std::size_t n = 0; n < M; ++n) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < r; ++i) {
        const auto digits = gammas[i].digits();
        for (unsigned k = 0; k < d[i]; ++k) code = code * p + digits[n + k];
      }
      ++counts[code];
    }
    const double expected = std::pow(static_cast<double>(p), -static_cast<double>(total));
    for (std::uint64_t code = 0; code < counts.size(); ++code) {
      std::vector<std::vector<std::pair<std::int64_t, Digit>>> cons(r);
      std::uint64_t c = code;
      for (std::size_t i = r; i-- > 0;) {
        for (unsigned k = d[i]; k-- > 0; c /= p) cons[i].emplace_back(k, static_cast<Digit>(c % p));
      }
      JointCylinderStat s;
      for (auto& ci : cons) s.specs.emplace_back(prime, ci);
      fill_stat(s, counts[code], M, expected);
      rep.max_abs_z = std::max(rep.max_abs_z, std::abs(s.z));
      rep.cylinders.push_back(std::move(s));
    }
  }

  const auto sample = PartialSumSequence(gammas, M).sample();
  rep.box_discrepancy = box_discrepancy(sample, prime, thresholds.box_depth);
  rep.weyl = weyl_stats(sample, enumerate_V(r, 3));
  rep.pass = verdict(rep);
  return rep;
}

namespace {

void check_character_input(const ProductPoint& P, const CharacterIndex& chi, std::size_t M) {
  if (chi.m().size() != P.dim()) throw InvalidArgument("character length does not match point dimension");
  if (M == 0) throw InvalidArgument("character average needs M >= 1");
  for (const auto& c : P.components()) {
    if (c.real().exact() != 0) throw InvalidArgument("character average starts from points with zero real part");
    require_precision(c.padic(), M + chi.t(), "character average");
  }
}

}  // namespace

std::complex<double> character_average(const ProductPoint& P, const CharacterIndex& chi, std::size_t M) {
  check_character_input(P, chi, M);
  const auto sigma = linear_combination(P, chi.m()).padic();
  const auto scale = detail::phase_scale(P.prime().value());
  const auto digits = sigma.digits();
  std::complex<double> sum = 0.0;
  for (std::size_t n = 1; n <= M; ++n) {
    const auto ph = partial_sum_phase(scale, digits, n + chi.t() - 1);
    sum += unit_circle(detail::phase_value(scale, ph));
  }
  return sum / static_cast<double>(M);
}

std::complex<double> character_average_componentwise(const ProductPoint& P, const CharacterIndex& chi, std::size_t M) {
  check_character_input(P, chi, M);
  const auto scale = detail::phase_scale(P.prime().value());
  std::vector<detail::Phase> phases(P.dim());
  std::complex<double> sum = 0.0;
  for (std::size_t n = 1; n <= M; ++n) {
    for (std::size_t j = 0; j < P.dim(); ++j) {
      phases[j] = partial_sum_phase(scale, P[j].padic().digits(), n + chi.t() - 1);
    }
    sum += unit_circle(detail::combine_phases(scale, chi.m(), phases));
  }
  return sum / static_cast<double>(M);
}

ReductionReport reduction_check(const PadicInt& alpha, const std::vector<PadicInt>& betas, std::int64_t B,
                                std::size_t M, const ReductionConfig& config) {
  if (betas.empty()) throw InvalidArgument("reduction check needs at least one beta");
  for (const auto& b : betas) require_same_prime(alpha.prime(), b.prime(), "reduction check");
  const std::size_t r = betas.size();
  const auto V = enumerate_V(r, B);

  ReductionReport rep;
  rep.r = r;
  rep.B = B;

  std::vector<PadicInt> gammas;
  gammas.reserve(r);
  for (const auto& b : betas) gammas.push_back(alpha * b);
  rep.joint = joint_genericity_test(gammas, M, config.depth, config.joint);

  rep.sigmas.resize(V.size());
  std::vector<std::exception_ptr> errors(V.size());
  auto run_one = [&](std::size_t idx) {
    try {
      const auto& m = V[idx];
      PadicInt sigma = PadicInt::zero(alpha.prime(), betas.front().precision());
      for (std::size_t j = 0; j < r; ++j) {
        if (m[j] != 0) sigma = sigma + scale(betas[j], m[j]);
      }
      SigmaResult res;
      res.m = m;
      if (!sigma.is_zero()) res.valuation = val_unit(sigma).val;
      res.report = genericity_test(sigma * alpha, M, config.depth, config.single);
      rep.sigmas[idx] = std::move(res);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(V.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < V.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < V.size(); i = next++) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  rep.all_sigma_pass = std::all_of(rep.sigmas.begin(), rep.sigmas.end(),
                                   [](const SigmaResult& s) { return s.report.pass; });
  rep.agree = rep.all_sigma_pass == rep.joint.pass;
  return rep;
}

}  // namespace padyn
