// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "padyn/app.hpp"
#include "padyn/criterion.hpp"
#include "padyn/equidist.hpp"
#include "padyn/rng.hpp"
#include "padyn/solenoid.hpp"
#include "padyn/symbolic.hpp"

using namespace padyn;

namespace {

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  [[nodiscard]] bool ok() const { return failures_ == 0; }
  [[nodiscard]] std::string summary() const {
    std::string s = std::to_string(failures_) + " failed";
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Check&)> body;
};

PadicInt digits_padic(oracle::Gen& g, Prime p, std::size_t N) { return PadicInt(p, g.digits(p.value(), N)); }

unsigned hardware_threads() { return std::max(1U, std::min(8U, std::thread::hardware_concurrency())); }

// 1: exact identities, compared digit for digit.
void exact_identities(Check& ck) {
  oracle::Gen g(1001);
  const std::vector<std::uint32_t> primes{3, 5, 7, 11};

  for (int i = 0; i < 1000; ++i) {
    const Prime p(primes[g.below(primes.size())]);
    const auto neg = g.digits(p.value(), g.below(10));
    const auto nonneg = g.digits(p.value(), 1 + g.below(10));
    const TwoSidedWord w(p, neg, nonneg);
    ck.expect(pi(shift2(w)) == t3_step(pi(w)), "pi o shift2 != t3_step o pi");
  }

  for (int i = 0; i < 1000; ++i) {
    const Prime p(primes[g.below(primes.size())]);
    const std::size_t alpha = g.below(11);
    const auto neg = g.digits(p.value(), 12);
    const auto nonneg = g.digits(p.value(), 24);
    const TwoSidedWord w(p, neg, nonneg);
    std::vector<std::pair<std::int64_t, Digit>> cons;
    const std::size_t k = 1 + g.below(4);
    for (std::int64_t idx = g.between(-12, 12 - static_cast<std::int64_t>(k)); cons.size() < k; ++idx) {
      cons.emplace_back(idx, static_cast<Digit>(g.below(p.value())));
    }
    const CylinderSpec c(p, cons);
    ck.expect(cylinder_contains(shift2(w, alpha), c) ==
                  cylinder_contains(w, translate_cylinder(c, static_cast<std::int64_t>(alpha))),
              "shift alignment");
  }

  for (std::size_t n = 0; n <= 30; ++n) {
    const Prime p(primes[n % primes.size()]);
    const auto gamma = digits_padic(g, p, 40);
    const SolenoidPoint a(gamma, BasePFraction(p, g.digits(p.value(), 8)));
    const SolenoidPoint b(gamma, BasePFraction(p, g.digits(p.value(), 8)));
    const Rational diff = t3_iterate(a, n).real().exact() - t3_iterate(b, n).real().exact();
    const Rational want = (a.real().exact() - b.real().exact()) / Rational(oracle::power(p.value(), n));
    ck.expect(diff == want, "real-coordinate decay at n=" + std::to_string(n));
  }

  for (std::size_t n = 0; n <= 20; ++n) {
    for (std::uint32_t pv : primes) {
      const Prime p(pv);
      const auto gamma = digits_padic(g, p, 25);
      ck.expect(orbit_closed_form(gamma, n) == t3_iterate(SolenoidPoint(gamma, BasePFraction::zero(p)), n + 1),
                "closed form at n=" + std::to_string(n));
    }
  }

  for (int i = 0; i < 100; ++i) {
    const Prime p(primes[g.below(primes.size())]);
    const std::size_t N = 40;
    const auto alpha = digits_padic(g, p, N);
    const std::size_t v = g.below(6);
    const oracle::Big sigma_int = oracle::power(p.value(), v) * (1 + g.below(p.value() - 1) + p.value() * g.below(1000));
    const auto sigma = from_integer(BigInt(sigma_int), p, N);
    const auto vu = val_unit(sigma);
    const std::size_t n = g.below(20);
    ck.expect(vu.val == v, "valuation");
    ck.expect(tcal3_iterate(vu.unit * alpha, n) == tcal3_iterate(sigma * alpha, n + vu.val), "valuation shift");
  }
}

// 2: Teichmuller lifts.
void teichmuller_suite(Check& ck) {
  for (std::uint32_t pv : {3U, 5U, 7U, 11U, 13U}) {
    const Prime p(pv);
    for (std::size_t N : {1U, 2U, 7U, 20U, 40U}) {
      const auto lifts = teichmuller_table(p, N);
      const auto one = from_integer(1, p, N);
      for (std::uint32_t a = 1; a < pv; ++a) {
        const auto& eta = lifts[a - 1];
        ck.expect(pow(eta, pv - 1) == one, "eta^(p-1) != 1");
        ck.expect(eta.digit(0) == a, "eta != a mod p");
        ck.expect(oracle::value(eta.digits(), pv) == oracle::teichmuller(a, pv, N), "oracle fixed point");
        for (std::uint32_t b = 1; b < pv; ++b) {
          ck.expect(eta * lifts[b - 1] == lifts[(a * b) % pv - 1], "lifts not closed under multiplication");
        }
      }
    }
  }
  const auto t = teichmuller(2, Prime(5), 3);
  ck.expect(std::vector<Digit>(t.digits().begin(), t.digits().end()) == std::vector<Digit>{2, 1, 2},
            "digits of the lift of 2 mod 125");
  ck.expect(oracle::digits(oracle::teichmuller(2, 5, 3), 5, 3) == std::vector<std::uint32_t>{2, 1, 2},
            "oracle digits of the lift of 2 mod 125");
}

// 3: character relations and the two averaging routes.
void character_algebra(Check& ck) {
  oracle::Gen g(1003);
  const std::vector<std::uint32_t> primes{3, 5, 7, 11, 13};
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Prime p(primes[g.below(primes.size())]);
    const std::size_t r = 1 + g.below(3);
    const unsigned t = static_cast<unsigned>(g.below(7));
    std::vector<SolenoidPoint> comps;
    std::vector<std::int64_t> m, m2;
    for (std::size_t j = 0; j < r; ++j) {
      comps.emplace_back(digits_padic(g, p, 30), BasePFraction(p, g.digits(p.value(), 1 + g.below(15))));
      m.push_back(g.between(-6, 6));
      m2.push_back(g.between(-6, 6));
    }
    if (std::all_of(m.begin(), m.end(), [](auto v) { return v == 0; })) m[0] = 1;
    if (std::all_of(m2.begin(), m2.end(), [](auto v) { return v == 0; })) m2[0] = -1;
    const ProductPoint P(comps);
    const auto chi = character_eval(P, CharacterIndex(m, t));

    std::vector<std::int64_t> neg_m(m.size());
    std::transform(m.begin(), m.end(), neg_m.begin(), [](auto v) { return -v; });
    worst = std::max(worst, std::abs(character_eval(P, CharacterIndex(neg_m, t)) - std::conj(chi)));

    std::vector<std::int64_t> sum(m.size());
    for (std::size_t j = 0; j < r; ++j) sum[j] = m[j] + m2[j];
    const auto chi2 = character_eval(P, CharacterIndex(m2, t));
    const bool sum_zero = std::all_of(sum.begin(), sum.end(), [](auto v) { return v == 0; });
    const auto prod = sum_zero ? std::complex<double>(1.0) : character_eval(P, CharacterIndex(sum, t));
    worst = std::max(worst, std::abs(chi * chi2 - prod));

    // Level: one step forward drops the level by one; p*m at level t+1 is m at level t.
    worst = std::max(worst, std::abs(character_eval(t3_step(P), CharacterIndex(m, t)) -
                                     character_eval(P, CharacterIndex(m, t + 1))));
    std::vector<std::int64_t> pm(m.size());
    std::transform(m.begin(), m.end(), pm.begin(), [&](auto v) { return v * p.value(); });
    worst = std::max(worst, std::abs(character_eval(P, CharacterIndex(pm, t + 1)) - chi));

    // Through the linear combination sum m_j P_j.
    worst = std::max(worst, std::abs(character_eval(linear_combination(P, m), 1, t) - chi));
  }
  ck.expect(worst <= 1e-12, "pointwise relation error " + std::to_string(worst));

  double route = 0;
  for (int i = 0; i < 40; ++i) {
    const Prime p(primes[i % primes.size()]);
    const std::size_t r = 1 + g.below(3);
    std::vector<PadicInt> gammas;
    std::vector<std::int64_t> m;
    for (std::size_t j = 0; j < r; ++j) {
      gammas.push_back(random_padic(derive_seed(1004, i * 4 + j), p, 1010));
      m.push_back(g.between(-4, 4));
    }
    if (std::all_of(m.begin(), m.end(), [](auto v) { return v == 0; })) m[0] = 3;
    const auto P = ProductPoint::from_padics(gammas);
    const CharacterIndex chi(m, static_cast<unsigned>(g.below(7)));
    route = std::max(route, std::abs(character_average(P, chi, 1000) - character_average_componentwise(P, chi, 1000)));
  }
  ck.expect(route <= 1e-10, "route difference " + std::to_string(route));
}

// 4: pushforward of the uniform measure, through the command line.
void measure_compatibility(Check& ck) {
  std::ostringstream out, err;
  const int code = run_cli({"measure-check", "--prime", "3", "--seed", "4", "--length", "100000", "--depth", "3"}, out, err);
  ck.expect(code == kExitPass, "measure-check exit code " + std::to_string(code) + " " + err.str());
  if (code == kExitUsage) return;
  const auto j = nlohmann::json::parse(out.str());
  bool saw_middle_third = false;
  for (const auto& iv : j["intervals"]) {
    if (iv["a"] == 1 && iv["n"] == 1) {
      saw_middle_third = true;
      const double f = iv["frequency"].get<double>();
      ck.expect(std::abs(f - 1.0 / 3) <= 0.01, "frequency of (1/3, 2/3) is " + std::to_string(f));
    }
  }
  ck.expect(saw_middle_third, "no (1/3, 2/3) interval reported");
  std::size_t cylinders = 0;
  for (const auto& c : j["images"]) {
    ++cylinders;
    ck.expect(std::abs(c["z"].get<double>()) <= 5.0, "image cylinder z=" + std::to_string(c["z"].get<double>()));
  }
  ck.expect(cylinders == 2 * 3 + 3 * 9 + 4 * 27, "cylinder count " + std::to_string(cylinders));
}

// 5: single-orbit genericity.
void genericity_harness(Check& ck) {
  const Prime p(3);
  const std::size_t M = 100000;
  for (std::uint64_t seed : {5U, 6U}) {
    const auto rep = genericity_test(random_padic(seed, p, M + 3), M, 3, {5.0, 0.02});
    ck.expect(rep.pass, "seeded alpha failed: max|z|=" + std::to_string(rep.max_abs_z) +
                            " D*=" + std::to_string(rep.star_discrepancy));
  }
  for (std::uint64_t a : {1U, 2U, 17U}) {
    const auto rep = genericity_test(from_integer(a, p, M + 3), M, 3, {5.0, 0.02});
    ck.expect(!rep.pass, "integer alpha=" + std::to_string(a) + " passed");
  }
}

// 6: joint genericity against all sigma = m1 + m2 eta_2.
void reduction_agreement(Check& ck) {
  const Prime p(5);
  const std::size_t M = 100000;
  const std::size_t N = M + 3 + 8;
  const std::vector<PadicInt> betas{from_integer(1, p, N), teichmuller(2, p, N)};
  ReductionConfig cfg;
  cfg.threads = hardware_threads();

  const auto good = reduction_check(random_padic(6, p, N), betas, 2, M, cfg);
  ck.expect(good.joint.pass, "joint test failed for seeded alpha");
  ck.expect(good.all_sigma_pass, "some sigma*alpha failed for seeded alpha");
  ck.expect(good.agree, "verdicts disagree for seeded alpha");
  ck.expect(good.sigmas.size() == 24, "expected 24 sigmas");

  const auto bad = reduction_check(from_integer(7, p, N), betas, 2, M, cfg);
  ck.expect(!bad.joint.pass, "joint test passed for integer alpha");
  ck.expect(!bad.all_sigma_pass, "all sigma tests passed for integer alpha");
  ck.expect(bad.agree, "verdicts disagree for integer alpha");
}

struct PinnedWitness {
  std::uint32_t p;
  unsigned d;
  std::uint64_t alpha;
  std::size_t n;
  std::uint32_t value;
};

// First witnesses of the alpha-major scan over alpha = 1..20, n = 0..20.
const std::vector<PinnedWitness> kPinned = {
    {5, 3, 1, 0, 4},
    {7, 3, 1, 1, 1},
    {7, 5, 1, 0, 6},
};

// sum_a t_n(alpha eta_a) a^d mod p on plain integers.
std::uint32_t oracle_criterion(std::uint32_t p, unsigned d, std::uint64_t alpha, std::size_t n) {
  const oracle::Big q = oracle::power(p, n + 1);
  oracle::Big acc = 0;
  for (std::uint32_t a = 1; a < p; ++a) {
    const oracle::Big prod = oracle::mod(oracle::Big(alpha) * oracle::teichmuller(a, p, n + 1), q);
    oracle::Big ad = 1;
    for (unsigned i = 0; i < d; ++i) ad = ad * a % p;
    acc += prod / oracle::power(p, n) * ad;
  }
  return static_cast<std::uint32_t>(acc % p);
}

// 7: criterion sums.
void criterion_values(Check& ck) {
  for (const auto& pin : kPinned) {
    ck.expect(oracle_criterion(pin.p, pin.d, pin.alpha, pin.n) == pin.value,
              "pinned witness disagrees with direct summation");
    for (std::size_t n = 0; n < pin.n; ++n) {
      ck.expect(oracle_criterion(pin.p, pin.d, pin.alpha, n) == 0, "pinned witness is not the first");
    }
  }
  ck.expect(criterion_sum(CriterionQuery(Prime(5), 3, from_integer(1, Prime(5), 1), 0)) == 4, "p=5 d=3 alpha=1 n=0");
  ck.expect(criterion_sum(CriterionQuery(Prime(7), 3, from_integer(1, Prime(7), 1), 0)) == 0, "p=7 d=3 alpha=1 n=0");
  for (std::uint32_t pv : {5U, 7U, 11U, 13U}) {
    const Prime p(pv);
    for (unsigned d : criterion_exponents(p)) {
      const std::uint32_t want = (d + 1) % (pv - 1) == 0 ? pv - 1 : 0;
      ck.expect(criterion_sum(CriterionQuery(p, d, from_integer(1, p, 1), 0)) == want,
                "closed form p=" + std::to_string(pv) + " d=" + std::to_string(d));
    }
  }
  for (std::uint32_t pv : {5U, 7U}) {
    const Prime p(pv);
    std::vector<PadicInt> alphas;
    for (std::uint64_t a = 1; a <= 20; ++a) alphas.push_back(from_integer(a, p, 21));
    for (unsigned d : criterion_exponents(p)) {
      const auto res = scan_criterion(p, d, alphas, 20, 1);
      const std::string tag = "p=" + std::to_string(pv) + " d=" + std::to_string(d);
      ck.expect(res.witness.has_value(), "no witness for " + tag);
      if (!res.witness) continue;
      const auto& w = *res.witness;
      std::cout << "  witness " << tag << ": alpha=" << w.alpha_index + 1 << " n=" << w.n << " sum=" << w.value << "\n";
      const auto pin = std::find_if(kPinned.begin(), kPinned.end(), [&](const PinnedWitness& x) {
        return x.p == pv && x.d == d;
      });
      ck.expect(pin != kPinned.end(), "no pinned witness for " + tag);
      if (pin != kPinned.end()) {
        ck.expect(pin->alpha == w.alpha_index + 1 && pin->n == w.n && pin->value == w.value,
                  "witness for " + tag + " moved");
      }
    }
  }
}

// 8: byte-identical reruns, also across thread counts.
void determinism(Check& ck) {
  const std::vector<std::vector<std::string>> cmds{
      {"orbit", "--prime", "5", "--seed", "21", "--length", "2000"},
      {"orbit", "--prime", "3", "--seed", "21", "--length", "2000", "--format", "csv"},
      {"genericity", "--prime", "3", "--seed", "21", "--length", "20000"},
      {"genericity", "--prime", "7", "--seed", "21", "--length", "20000", "--format", "csv"},
      {"measure-check", "--prime", "3", "--seed", "21", "--length", "20000"},
      {"criterion", "--prime", "7", "--all-d", "--alpha-max", "20", "--n-max", "20"},
      {"criterion", "--prime", "11", "--all-d", "--alpha-max", "30", "--n-max", "20", "--format", "csv"},
      {"reduction", "--prime", "5", "--seed", "21", "--length", "20000", "--r", "2"},
      {"character", "--prime", "5", "--seed", "21", "--length", "20000", "--m", "1,-2", "--t", "3"},
      {"stickelberger", "--prime", "5", "--n", "2"},
      {"stickelberger", "--prime", "7", "--n", "1", "--format", "csv"},
  };
  auto run = [](const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = run_cli(args, out, err);
    return out.str();
  };
  for (const auto& cmd : cmds) {
    int c1 = 0, c2 = 0;
    const auto a = run(cmd, c1);
    const auto b = run(cmd, c2);
    ck.expect(c1 != kExitUsage, cmd[0] + " usage error");
    ck.expect(!a.empty() && a == b && c1 == c2, cmd[0] + " output differs between runs");
    if (cmd[0] == "criterion" || cmd[0] == "reduction") {
      for (const char* threads : {"2", "4"}) {
        auto threaded = cmd;
        threaded.insert(threaded.end(), {"--threads", threads});
        int c3 = 0;
        ck.expect(run(threaded, c3) == a && c3 == c1, cmd[0] + " output depends on --threads " + threads);
      }
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact identities", 10, exact_identities},
      {2, "Teichmuller lifts", 5, teichmuller_suite},
      {3, "character algebra", 5, character_algebra},
      {4, "measure compatibility", 60, measure_compatibility},
      {5, "genericity harness", 120, genericity_harness},
      {6, "reduction agreement", 300, reduction_agreement},
      {7, "criterion values", 5, criterion_values},
      {8, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check ck;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ck.expect(secs <= c.budget_seconds, "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget");
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (ck.ok() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << timing << ")";
    if (!ck.ok()) std::cout << " " << ck.summary();
    std::cout << std::endl;
    failed += ck.ok() ? 0 : 1;
  }
  return failed;
}
