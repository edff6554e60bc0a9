#include "padyn/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "padyn/criterion.hpp"
#include "padyn/csv.hpp"
#include "padyn/equidist.hpp"
#include "padyn/errors.hpp"
#include "padyn/padic.hpp"
#include "padyn/rng.hpp"
#include "padyn/serialize.hpp"
#include "padyn/solenoid.hpp"
#include "padyn/symbolic.hpp"

namespace padyn {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint32_t prime = 3;
  std::optional<std::size_t> precision;
  std::size_t length = 100000;
  std::optional<std::uint64_t> seed;
  unsigned depth = 3;
  double z = 5.0;
  double dstar = 0.02;
  std::string format = "json";
  std::string out_path;
  std::string alpha_digits;
  std::optional<std::uint64_t> alpha_seed;
  unsigned threads = 1;

  std::optional<unsigned> d;
  bool all_d = false;
  std::uint64_t alpha_min = 1;
  std::uint64_t alpha_max = 20;
  std::size_t n_max = 20;

  std::size_t r = 2;
  std::int64_t v_bound = 2;
  std::string betas;
  double box = 0.005;
  unsigned box_depth = 2;

  std::vector<std::string> intervals;

  std::string m = "1";
  unsigned t = 1;
  double weyl = 0.02;

  std::size_t n = 1;
};

struct Result {
  std::string machine;
  std::string summary;
  int code = kExitPass;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
  std::size_t pos = 0;
  try {
    if constexpr (std::is_signed_v<T>) {
      const long long v = std::stoll(s, &pos);
      if (pos == s.size()) return static_cast<T>(v);
    } else {
      if (!s.empty() && s[0] != '-') {
        const unsigned long long v = std::stoull(s, &pos);
        if (pos == s.size()) return static_cast<T>(v);
      }
    }
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
}

Prime make_prime(const Config& c) {
  try {
    return Prime(c.prime);
  } catch (const InvalidPrime& e) {
    throw UsageError(std::string("--prime: ") + e.what());
  }
}

std::size_t orbit_precision(const Config& c) {
  const std::size_t need = c.length + c.depth;
  const std::size_t N = c.precision.value_or(need);
  if (N < need) {
    throw UsageError("precision " + std::to_string(N) + " is below length + depth = " + std::to_string(need));
  }
  return N;
}

struct Alpha {
  PadicInt value;
  Json source;
};

Alpha resolve_alpha(const Config& c, Prime p, std::size_t N) {
  const std::optional<std::uint64_t> seed = c.alpha_seed ? c.alpha_seed : c.seed;
  if (!c.alpha_digits.empty()) {
    if (c.alpha_seed) throw UsageError("give either --alpha-digits or --alpha-seed, not both");
    std::vector<Digit> digits;
    for (const auto& tok : split_list(c.alpha_digits)) digits.push_back(parse_number<Digit>(tok, "alpha digit"));
    if (digits.size() > N) {
      throw UsageError("alpha has " + std::to_string(digits.size()) + " digits but precision is " + std::to_string(N));
    }
    Json src{{"source", "digits"}, {"digits", digits}};
    digits.resize(N, 0);
    try {
      return {PadicInt(p, std::move(digits)), std::move(src)};
    } catch (const InvalidDigit& e) {
      throw UsageError(std::string("--alpha-digits: ") + e.what());
    }
  }
  if (!seed) throw UsageError("alpha needs --alpha-digits or a seed (--alpha-seed or --seed)");
  return {random_padic(*seed, p, N), Json{{"source", "seed"}, {"seed", *seed}}};
}

std::string digits_text(std::span<const Digit> d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(d[i]);
  }
  return out;
}

Result cmd_orbit(const Config& c) {
  const Prime p = make_prime(c);
  const std::size_t N = orbit_precision(c);
  const auto alpha = resolve_alpha(c, p, N);
  const auto sample = PartialSumSequence({alpha.value}, c.length).sample();
  const auto digits = alpha.value.digits();

  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"step", "value", "padic_digits"});
    for (std::size_t n = 0; n < c.length; ++n) {
      w.row({std::to_string(n), format_double(sample.values[n]), digits_text(digits.subspan(n + 1, c.depth))});
    }
    res.machine = os.str();
  } else {
    Json rows = Json::array();
    for (std::size_t n = 0; n < c.length; ++n) {
      const auto lead = digits.subspan(n + 1, c.depth);
      rows.push_back(Json{{"step", n},
                          {"value", sample.values[n]},
                          {"padic_digits", std::vector<Digit>(lead.begin(), lead.end())}});
    }
    res.machine = dump(Json{{"schema", kSchemaVersion},
                            {"kind", "orbit"},
                            {"prime", p.value()},
                            {"M", c.length},
                            {"precision", N},
                            {"depth", c.depth},
                            {"alpha", alpha.source},
                            {"rows", std::move(rows)}});
  }
  res.summary = "orbit p=" + std::to_string(p.value()) + " M=" + std::to_string(c.length) + ": " +
                std::to_string(c.length) + " rows\n";
  return res;
}

Result cmd_genericity(const Config& c) {
  const Prime p = make_prime(c);
  const std::size_t N = orbit_precision(c);
  const auto alpha = resolve_alpha(c, p, N);
  const auto report = genericity_test(alpha.value, c.length, c.depth, {c.z, c.dstar});

  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    write_csv(os, report);
    res.machine = os.str();
  } else {
    Json j = to_json(report);
    j["precision"] = N;
    j["alpha"] = alpha.source;
    res.machine = dump(j);
  }
  res.code = report.pass ? kExitPass : kExitFail;
  res.summary = "genericity p=" + std::to_string(p.value()) + " M=" + std::to_string(c.length) +
                " depth=" + std::to_string(c.depth) + ": " + (report.pass ? "PASS" : "FAIL") +
                " max|z|=" + format_double(report.max_abs_z) + " D*=" + format_double(report.star_discrepancy) + "\n";
  return res;
}

struct IntervalTest {
  std::uint64_t a;
  unsigned n;
  std::uint64_t hits = 0;
};

struct ImageTest {
  unsigned k_padic;
  unsigned k_real;
  std::vector<std::uint64_t> counts;
};

Result cmd_measure_check(const Config& c) {
  const Prime p = make_prime(c);
  const std::uint32_t pv = p.value();
  if (!c.seed) throw UsageError("measure-check is stochastic and needs --seed");
  if (c.length == 0) throw UsageError("--length must be at least 1");
  if (c.depth == 0) throw UsageError("--depth must be at least 1");

  std::vector<IntervalTest> intervals;
  if (c.intervals.empty()) {
    for (std::uint32_t a = 1; a < pv; ++a) intervals.push_back({a, 1});
  }
  for (const auto& spec : c.intervals) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("--interval expects A:N, got '" + spec + "'");
    const auto a = parse_number<std::uint64_t>(spec.substr(0, colon), "interval numerator");
    const auto n = parse_number<unsigned>(spec.substr(colon + 1), "interval depth");
    if (n == 0 || n > 40) throw UsageError("interval depth must be in 1..40");
    if (std::gcd(a, std::uint64_t{pv}) != 1) {
      throw UsageError("interval numerator " + std::to_string(a) + " must be coprime to p");
    }
    if (a >= checked_power(pv, n)) throw UsageError("interval numerator must be below p^N");
    intervals.push_back({a, n});
  }
  unsigned max_n = c.depth;
  for (const auto& iv : intervals) max_n = std::max(max_n, iv.n);
  const std::size_t L = c.precision.value_or(max_n + 32);
  if (L < max_n) throw UsageError("precision " + std::to_string(L) + " is below the deepest test " + std::to_string(max_n));

  std::vector<ImageTest> images;
  for (unsigned total = 1; total <= c.depth; ++total) {
    for (unsigned kp = total + 1; kp-- > 0;) {
      images.push_back({kp, total - kp, std::vector<std::uint64_t>(checked_power(pv, total), 0)});
    }
  }

  for (std::size_t i = 0; i < c.length; ++i) {
    const auto w = sample_uniform_word(derive_seed(*c.seed, i), p, L, c.depth);
    const auto pt = pi(w);
    for (auto& iv : intervals) iv.hits += in_open_interval(pt.real(), iv.a, iv.n) ? 1 : 0;
    for (auto& im : images) {
      std::uint64_t code = 0;
      for (unsigned j = 0; j < im.k_padic; ++j) code = code * pv + pt.padic().digit(j);
      for (unsigned j = 1; j <= im.k_real; ++j) code = code * pv + pt.real().digit(j);
      ++im.counts[code];
    }
  }

  const auto M = static_cast<double>(c.length);
  bool pass = true;
  double max_abs_z = 0.0;
  Json ivs = Json::array();
  Json cyls = Json::array();
  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"test", "padic_digits", "real_digits", "a", "n", "hits", "trials", "frequency", "expected", "z"});
  auto record = [&](double freq, double expected) {
    const double z = z_score(freq, expected, c.length);
    max_abs_z = std::max(max_abs_z, std::abs(z));
    if (std::abs(z) > c.z) pass = false;
    return z;
  };
  for (const auto& iv : intervals) {
    const double freq = static_cast<double>(iv.hits) / M;
    const double expected = std::pow(static_cast<double>(pv), -static_cast<double>(iv.n));
    const double z = record(freq, expected);
    ivs.push_back(Json{{"a", iv.a}, {"n", iv.n}, {"hits", iv.hits}, {"trials", c.length},
                       {"frequency", freq}, {"expected", expected}, {"z", z}});
    w.row({"interval", "", "", std::to_string(iv.a), std::to_string(iv.n), std::to_string(iv.hits),
           std::to_string(c.length), format_double(freq), format_double(expected), format_double(z)});
  }
  for (const auto& im : images) {
    const unsigned total = im.k_padic + im.k_real;
    const double expected = std::pow(static_cast<double>(pv), -static_cast<double>(total));
    for (std::uint64_t code = 0; code < im.counts.size(); ++code) {
      std::vector<Digit> all(total);
      std::uint64_t rest = code;
      for (unsigned j = total; j-- > 0; rest /= pv) all[j] = static_cast<Digit>(rest % pv);
      const std::vector<Digit> padic(all.begin(), all.begin() + im.k_padic);
      const std::vector<Digit> real(all.begin() + im.k_padic, all.end());
      const double freq = static_cast<double>(im.counts[code]) / M;
      const double z = record(freq, expected);
      cyls.push_back(Json{{"padic_digits", padic}, {"real_digits", real}, {"hits", im.counts[code]},
                          {"trials", c.length}, {"frequency", freq}, {"expected", expected}, {"z", z}});
      w.row({"image", digits_text(padic), digits_text(real), "", "", std::to_string(im.counts[code]),
             std::to_string(c.length), format_double(freq), format_double(expected), format_double(z)});
    }
  }

  Result res;
  if (c.format == "csv") {
    res.machine = csv.str();
  } else {
    res.machine = dump(Json{{"schema", kSchemaVersion},
                            {"kind", "measure-check"},
                            {"prime", pv},
                            {"M", c.length},
                            {"seed", *c.seed},
                            {"real_digits_sampled", L},
                            {"depth", c.depth},
                            {"thresholds", {{"z", c.z}}},
                            {"max_abs_z", max_abs_z},
                            {"intervals", std::move(ivs)},
                            {"images", std::move(cyls)},
                            {"pass", pass}});
  }
  res.code = pass ? kExitPass : kExitFail;
  res.summary = "measure-check p=" + std::to_string(pv) + " M=" + std::to_string(c.length) + ": " +
                (pass ? "PASS" : "FAIL") + " max|z|=" + format_double(max_abs_z) + "\n";
  return res;
}

Result cmd_criterion(const Config& c) {
  const Prime p = make_prime(c);
  std::vector<unsigned> ds;
  if (c.all_d) {
    if (c.d) throw UsageError("give either --d or --all-d, not both");
    ds = criterion_exponents(p);
    if (ds.empty()) throw UsageError("no odd d with 3 <= d <= p-2 exists for p=" + std::to_string(p.value()));
  } else if (c.d) {
    if (!valid_criterion_exponent(p, *c.d)) throw UsageError("--d must be odd with 3 <= d <= p-2");
    ds.push_back(*c.d);
  } else {
    throw UsageError("criterion needs --d or --all-d");
  }

  std::vector<PadicInt> alphas;
  for (std::uint64_t a = c.alpha_min; a <= c.alpha_max && c.alpha_max >= c.alpha_min; ++a) {
    alphas.push_back(from_integer(a, p, c.n_max + 1));
    if (a == std::numeric_limits<std::uint64_t>::max()) break;
  }

  Json results = Json::array();
  bool all_found = true;
  std::string summary;
  for (unsigned d : ds) {
    const auto scan = scan_criterion(p, d, alphas, c.n_max, c.threads);
    results.push_back(to_json(scan));
    all_found = all_found && scan.witness.has_value();
    summary += "criterion p=" + std::to_string(p.value()) + " d=" + std::to_string(d) + ": ";
    if (scan.witness) {
      summary += "witness alpha=" + std::to_string(c.alpha_min + scan.witness->alpha_index) +
                 " n=" + std::to_string(scan.witness->n) + " sum=" + std::to_string(scan.witness->value) + "\n";
    } else {
      summary += "none found\n";
    }
  }

  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"p", "d", "alpha", "n", "value", "alphas_scanned", "evaluations"});
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& r = results[i];
      const bool found = !r["witness"].is_null();
      w.row({std::to_string(p.value()), std::to_string(ds[i]),
             found ? std::to_string(c.alpha_min + r["witness_alpha_index"].get<std::uint64_t>()) : "",
             found ? std::to_string(r["witness"][1].get<std::size_t>()) : "",
             found ? std::to_string(r["witness_value"].get<std::uint32_t>()) : "",
             std::to_string(r["scanned"]["alphas"].get<std::uint64_t>()),
             std::to_string(r["scanned"]["evaluations"].get<std::uint64_t>())});
    }
    res.machine = os.str();
  } else {
    res.machine = dump(Json{{"schema", kSchemaVersion},
                            {"kind", "criterion"},
                            {"p", p.value()},
                            {"alpha_range", Json::array({c.alpha_min, c.alpha_max})},
                            {"n_max", c.n_max},
                            {"results", std::move(results)}});
  }
  res.code = all_found ? kExitPass : kExitFail;
  res.summary = summary;
  return res;
}

std::vector<PadicInt> resolve_betas(const Config& c, Prime p, std::size_t N) {
  std::vector<std::string> tokens = split_list(c.betas);
  if (tokens.empty()) {
    if (c.r == 0) throw UsageError("--r must be at least 1");
    if (c.r > p.value() - 1) throw UsageError("default betas need r <= p-1; pass --betas");
    tokens.push_back("1");
    for (std::size_t i = 2; i <= c.r; ++i) tokens.push_back("t" + std::to_string(i));
  } else if (tokens.size() != c.r) {
    throw UsageError("--betas lists " + std::to_string(tokens.size()) + " values but --r is " + std::to_string(c.r));
  }
  std::vector<PadicInt> out;
  for (const auto& tok : tokens) {
    if (tok[0] == 't') {
      const auto a = parse_number<std::uint32_t>(tok.substr(1), "Teichmuller residue");
      if (a == 0 || a >= p.value()) throw UsageError("Teichmuller residue must be in 1..p-1");
      out.push_back(teichmuller(a, p, N));
    } else {
      out.push_back(from_signed(BigInt(parse_number<std::int64_t>(tok, "beta")), p, N));
    }
  }
  return out;
}

Result cmd_reduction(const Config& c) {
  const Prime p = make_prime(c);
  const std::size_t N = orbit_precision(c);
  if (c.v_bound < 1) throw UsageError("--v-bound must be at least 1");
  const auto alpha = resolve_alpha(c, p, N);
  const auto betas = resolve_betas(c, p, N);
  ReductionConfig cfg;
  cfg.depth = c.depth;
  cfg.single = {c.z, c.dstar};
  cfg.joint = {c.z, c.box, c.box_depth};
  cfg.threads = c.threads;
  const auto report = reduction_check(alpha.value, betas, c.v_bound, c.length, cfg);

  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"test", "m", "valuation", "max_abs_z", "discrepancy", "pass"});
    w.row({"joint", "", "", format_double(report.joint.max_abs_z), format_double(report.joint.box_discrepancy),
           report.joint.pass ? "1" : "0"});
    for (const auto& s : report.sigmas) {
      std::string m;
      for (auto v : s.m) m += (m.empty() ? "" : " ") + std::to_string(v);
      w.row({"sigma", m, s.valuation ? std::to_string(*s.valuation) : "", format_double(s.report.max_abs_z),
             format_double(s.report.star_discrepancy), s.report.pass ? "1" : "0"});
    }
    res.machine = os.str();
  } else {
    Json j = to_json(report);
    j["prime"] = p.value();
    j["M"] = c.length;
    j["precision"] = N;
    j["alpha"] = alpha.source;
    j["betas"] = c.betas.empty() ? Json("default") : Json(c.betas);
    res.machine = dump(j);
  }
  res.code = report.agree ? kExitPass : kExitFail;
  res.summary = std::string("reduction r=") + std::to_string(report.r) + " B=" + std::to_string(report.B) +
                ": joint " + (report.joint.pass ? "pass" : "fail") + ", all sigma " +
                (report.all_sigma_pass ? "pass" : "fail") + ", " + (report.agree ? "AGREE" : "DISAGREE") + "\n";
  return res;
}

Result cmd_character(const Config& c) {
  const Prime p = make_prime(c);
  if (!c.seed) throw UsageError("character is stochastic and needs --seed");
  if (c.length == 0) throw UsageError("--length must be at least 1");
  std::vector<std::int64_t> m;
  for (const auto& tok : split_list(c.m)) m.push_back(parse_number<std::int64_t>(tok, "frequency"));
  if (m.empty()) throw UsageError("--m needs at least one entry");
  if (c.t > kMaxCharacterLevel) throw UsageError("--t must be at most " + std::to_string(kMaxCharacterLevel));
  const std::size_t need = c.length + c.t;
  const std::size_t N = c.precision.value_or(need);
  if (N < need) throw UsageError("precision " + std::to_string(N) + " is below length + t = " + std::to_string(need));

  std::vector<PadicInt> gammas;
  for (std::size_t j = 0; j < m.size(); ++j) gammas.push_back(random_padic(derive_seed(*c.seed, j), p, N));
  const auto P = ProductPoint::from_padics(gammas);
  const CharacterIndex chi(m, c.t);
  const auto via_sigma = character_average(P, chi, c.length);
  const auto direct = character_average_componentwise(P, chi, c.length);
  const double diff = std::abs(via_sigma - direct);
  const bool pass = std::abs(via_sigma) <= c.weyl && diff <= 1e-10;

  auto cj = [](std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; };
  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"route", "re", "im", "abs"});
    w.row({"sigma", format_double(via_sigma.real()), format_double(via_sigma.imag()), format_double(std::abs(via_sigma))});
    w.row({"componentwise", format_double(direct.real()), format_double(direct.imag()), format_double(std::abs(direct))});
    res.machine = os.str();
  } else {
    res.machine = dump(Json{{"schema", kSchemaVersion},
                            {"kind", "character"},
                            {"prime", p.value()},
                            {"M", c.length},
                            {"seed", *c.seed},
                            {"m", m},
                            {"t", c.t},
                            {"via_sigma", cj(via_sigma)},
                            {"componentwise", cj(direct)},
                            {"route_difference", diff},
                            {"thresholds", {{"magnitude", c.weyl}, {"route_difference", 1e-10}}},
                            {"pass", pass}});
  }
  res.code = pass ? kExitPass : kExitFail;
  res.summary = "character p=" + std::to_string(p.value()) + " M=" + std::to_string(c.length) +
                ": |average|=" + format_double(std::abs(via_sigma)) + " route difference=" + format_double(diff) +
                (pass ? " PASS\n" : " FAIL\n");
  return res;
}

Result cmd_stickelberger(const Config& c) {
  const Prime p = make_prime(c);
  const std::size_t N = c.precision.value_or(c.n + 1);
  if (N < c.n + 1) throw UsageError("precision must be at least n+1");
  const auto el = stickelberger_element(p, c.n, N);
  Result res;
  if (c.format == "csv") {
    std::ostringstream os;
    write_csv(os, el);
    res.machine = os.str();
  } else {
    res.machine = dump(to_json(el));
  }
  res.summary = "stickelberger p=" + std::to_string(p.value()) + " n=" + std::to_string(c.n) + ": " +
                std::to_string(el.entries.size()) + " coefficients\n";
  return res;
}

void add_output_flags(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "Machine output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out_path, "Write machine output to this file instead of stdout");
}

void add_alpha_flags(CLI::App* sub, Config& c) {
  sub->add_option("--alpha-digits", c.alpha_digits, "Digits t_0,t_1,... of alpha (zero-padded to the precision)");
  sub->add_option("--alpha-seed", c.alpha_seed, "Seed for a random alpha");
  sub->add_option("--seed", c.seed, "Seed (used for alpha when --alpha-seed is absent)");
}

void add_orbit_flags(CLI::App* sub, Config& c) {
  sub->add_option("--prime", c.prime, "Odd prime p")->capture_default_str();
  sub->add_option("--precision", c.precision, "Digits of precision (default length + depth)");
  sub->add_option("--length", c.length, "Orbit length M")->capture_default_str();
  sub->add_option("--depth", c.depth, "Cylinder depth / leading digits shown")->capture_default_str();
}

void add_threshold_flags(CLI::App* sub, Config& c) {
  sub->add_option("--z-threshold", c.z, "Largest accepted |z|")->capture_default_str();
  sub->add_option("--dstar-threshold", c.dstar, "Largest accepted star discrepancy")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"p-adic digit dynamics and equidistribution experiments", "padyn"};
  app.require_subcommand(1);

  auto* orbit = app.add_subcommand("orbit", "Dump s_n(alpha)/p^(n+1) and the leading p-adic digits along the orbit");
  add_orbit_flags(orbit, c);
  add_alpha_flags(orbit, c);
  add_output_flags(orbit, c);

  auto* gen = app.add_subcommand("genericity", "Cylinder, discrepancy and Weyl statistics of one orbit");
  add_orbit_flags(gen, c);
  add_alpha_flags(gen, c);
  add_threshold_flags(gen, c);
  add_output_flags(gen, c);

  auto* measure = app.add_subcommand("measure-check", "Monte Carlo pushforward of the uniform Bernoulli measure");
  measure->add_option("--prime", c.prime, "Odd prime p")->capture_default_str();
  measure->add_option("--length", c.length, "Number of sampled words")->capture_default_str();
  measure->add_option("--seed", c.seed, "Sampling seed")->required();
  measure->add_option("--depth", c.depth, "Largest total depth of tested image cylinders")->capture_default_str();
  measure->add_option("--precision", c.precision, "Real-side digits sampled per word");
  measure->add_option("--interval", c.intervals, "Open interval (A/p^N, (A+1)/p^N) as A:N; repeatable");
  measure->add_option("--z-threshold", c.z, "Largest accepted |z|")->capture_default_str();
  add_output_flags(measure, c);

  auto* crit = app.add_subcommand("criterion", "Scan for nonzero vanishing-criterion sums");
  crit->add_option("--prime", c.prime, "Odd prime p")->capture_default_str();
  crit->add_option("--d", c.d, "Odd exponent 3 <= d <= p-2");
  crit->add_flag("--all-d", c.all_d, "Scan every valid exponent");
  crit->add_option("--alpha-min", c.alpha_min, "Smallest integer alpha")->capture_default_str();
  crit->add_option("--alpha-max", c.alpha_max, "Largest integer alpha")->capture_default_str();
  crit->add_option("--n-max", c.n_max, "Largest digit index")->capture_default_str();
  crit->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  add_output_flags(crit, c);

  auto* red = app.add_subcommand("reduction", "Joint genericity versus genericity of every sigma*alpha");
  add_orbit_flags(red, c);
  add_alpha_flags(red, c);
  add_threshold_flags(red, c);
  red->add_option("--r", c.r, "Number of betas")->capture_default_str();
  red->add_option("--v-bound", c.v_bound, "Bound B on the coefficients m")->capture_default_str();
  red->add_option("--betas", c.betas, "Betas: integers k or Teichmuller lifts tA (default 1,t2,...,tr)");
  red->add_option("--box-threshold", c.box, "Largest accepted joint box discrepancy")->capture_default_str();
  red->add_option("--box-depth", c.box_depth, "Box depth of the joint discrepancy")->capture_default_str();
  red->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  add_output_flags(red, c);

  auto* ch = app.add_subcommand("character", "Ergodic average of a solenoid character along random orbits");
  ch->add_option("--prime", c.prime, "Odd prime p")->capture_default_str();
  ch->add_option("--length", c.length, "Averaging length M")->capture_default_str();
  ch->add_option("--seed", c.seed, "Seed for the starting points")->required();
  ch->add_option("--precision", c.precision, "Digits of precision (default length + t)");
  ch->add_option("--m", c.m, "Frequency vector, comma separated; its length is the dimension")->capture_default_str();
  ch->add_option("--t", c.t, "Level")->capture_default_str();
  ch->add_option("--weyl-threshold", c.weyl, "Largest accepted |average|")->capture_default_str();
  add_output_flags(ch, c);

  auto* st = app.add_subcommand("stickelberger", "Coefficient table s_n(u eta_a)/p^(n+1)");
  st->add_option("--prime", c.prime, "Odd prime p")->capture_default_str();
  st->add_option("--n", c.n, "Digit index n")->capture_default_str();
  st->add_option("--precision", c.precision, "Digits of precision (default n+1)");
  add_output_flags(st, c);

  // CLI11 consumes arguments from the back.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Result res;
  try {
    if (orbit->parsed()) res = cmd_orbit(c);
    else if (gen->parsed()) res = cmd_genericity(c);
    else if (measure->parsed()) res = cmd_measure_check(c);
    else if (crit->parsed()) res = cmd_criterion(c);
    else if (red->parsed()) res = cmd_reduction(c);
    else if (ch->parsed()) res = cmd_character(c);
    else res = cmd_stickelberger(c);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (c.out_path.empty()) {
    out << res.machine;
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << c.out_path << " for writing\n";
      return kExitUsage;
    }
    f << res.machine;
    out << res.summary;
  }
  return res.code;
}

}  // namespace padyn
