#include "padyn/serialize.hpp"

#include <string>
#include <vector>

#include "padyn/csv.hpp"
#include "padyn/errors.hpp"

namespace padyn {

namespace {

template <class T, class F>
T guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

std::vector<Digit> digit_list(const Json& j) { return j.get<std::vector<Digit>>(); }

Json complex_json(std::complex<double> z) {
  return Json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
}

Json weyl_json(const std::vector<WeylStat>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws) {
    Json e = complex_json(w.average);
    e["k"] = w.k;
    arr.push_back(std::move(e));
  }
  return arr;
}

template <class Stat>
void stat_fields(Json& e, const Stat& s) {
  e["hits"] = s.hits;
  e["trials"] = s.trials;
  e["frequency"] = s.frequency;
  e["expected"] = s.expected;
  e["z"] = s.z;
}

}  // namespace

Json to_json(const PadicInt& a) {
  return Json{{"p", a.prime().value()}, {"digits", std::vector<Digit>(a.digits().begin(), a.digits().end())}};
}

PadicInt padic_from_json(const Json& j) {
  return guarded<PadicInt>("p-adic integer", [&] {
    return PadicInt(Prime(j.at("p").get<std::uint32_t>()), digit_list(j.at("digits")));
  });
}

Json to_json(const TwoSidedWord& w) {
  const auto nonneg = w.nonneg_digits();
  return Json{{"p", w.prime().value()},
              {"neg", w.neg_digits()},
              {"nonneg", std::vector<Digit>(nonneg.begin(), nonneg.end())}};
}

TwoSidedWord word_from_json(const Json& j) {
  return guarded<TwoSidedWord>("word", [&] {
    const auto neg = digit_list(j.at("neg"));
    const auto nonneg = digit_list(j.at("nonneg"));
    return TwoSidedWord(Prime(j.at("p").get<std::uint32_t>()), neg, nonneg);
  });
}

Json to_json(const CylinderSpec& c) {
  Json pairs = Json::array();
  for (const auto& [index, digit] : c.constraints()) pairs.push_back(Json::array({index, digit}));
  return Json{{"p", c.prime().value()}, {"constraints", std::move(pairs)}};
}

CylinderSpec cylinder_from_json(const Json& j) {
  return guarded<CylinderSpec>("cylinder", [&] {
    std::vector<std::pair<std::int64_t, Digit>> cons;
    for (const auto& e : j.at("constraints")) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument("cylinder constraint must be an [index, digit] pair");
      cons.emplace_back(e[0].get<std::int64_t>(), e[1].get<Digit>());
    }
    return CylinderSpec(Prime(j.at("p").get<std::uint32_t>()), cons);
  });
}

Json to_json(const SolenoidPoint& s) {
  const auto real = s.real().digits();
  return Json{{"padic", to_json(s.padic())}, {"real_digits", std::vector<Digit>(real.begin(), real.end())}};
}

SolenoidPoint point_from_json(const Json& j) {
  return guarded<SolenoidPoint>("solenoid point", [&] {
    PadicInt padic = padic_from_json(j.at("padic"));
    const Prime p = padic.prime();
    return SolenoidPoint(std::move(padic), BasePFraction(p, digit_list(j.at("real_digits"))));
  });
}

Json to_json(const GenericityReport& r) {
  Json cyl = Json::array();
  for (const auto& s : r.cylinders) {
    Json e{{"spec", to_json(s.spec)["constraints"]}};
    stat_fields(e, s);
    cyl.push_back(std::move(e));
  }
  return Json{{"schema", kSchemaVersion},
              {"kind", "genericity"},
              {"prime", r.p},
              {"M", r.M},
              {"depth", r.depth},
              {"thresholds", {{"z", r.thresholds.z}, {"dstar", r.thresholds.dstar}}},
              {"star_discrepancy", r.star_discrepancy},
              {"max_abs_z", r.max_abs_z},
              {"weyl", weyl_json(r.weyl)},
              {"cylinders", std::move(cyl)},
              {"pass", r.pass}};
}

Json to_json(const JointReport& r) {
  Json cyl = Json::array();
  for (const auto& s : r.cylinders) {
    Json specs = Json::array();
    for (const auto& c : s.specs) specs.push_back(to_json(c)["constraints"]);
    Json e{{"specs", std::move(specs)}};
    stat_fields(e, s);
    cyl.push_back(std::move(e));
  }
  return Json{{"schema", kSchemaVersion},
              {"kind", "joint-genericity"},
              {"prime", r.p},
              {"r", r.r},
              {"M", r.M},
              {"depth", r.depth},
              {"thresholds", {{"z", r.thresholds.z}, {"box", r.thresholds.box}, {"box_depth", r.thresholds.box_depth}}},
              {"box_discrepancy", r.box_discrepancy},
              {"max_abs_z", r.max_abs_z},
              {"weyl", weyl_json(r.weyl)},
              {"cylinders", std::move(cyl)},
              {"pass", r.pass}};
}

Json to_json(const ReductionReport& r) {
  Json sigmas = Json::array();
  for (const auto& s : r.sigmas) {
    sigmas.push_back(Json{{"m", s.m},
                          {"valuation", s.valuation ? Json(*s.valuation) : Json(nullptr)},
                          {"report", to_json(s.report)}});
  }
  return Json{{"schema", kSchemaVersion}, {"kind", "reduction"},    {"r", r.r},
              {"B", r.B},                 {"joint", to_json(r.joint)}, {"sigmas", std::move(sigmas)},
              {"all_sigma_pass", r.all_sigma_pass}, {"joint_pass", r.joint.pass}, {"agree", r.agree}};
}

Json to_json(const ScanResult& r) {
  Json witness = nullptr;
  if (r.witness) {
    const auto d = r.witness->alpha.digits();
    witness = Json::array({std::vector<Digit>(d.begin(), d.end()), r.witness->n});
  }
  Json j{{"p", r.p}, {"d", r.d}, {"witness", std::move(witness)}};
  if (r.witness) {
    j["witness_alpha_index"] = r.witness->alpha_index;
    j["witness_value"] = r.witness->value;
  }
  j["scanned"] = Json{{"alphas", r.alphas_scanned}, {"evaluations", r.evaluations}};
  return j;
}

Json to_json(const StickelbergerElement& e) {
  Json entries = Json::array();
  for (const auto& x : e.entries) entries.push_back(Json::array({x.u, x.a, x.numerator}));
  return Json{{"schema", kSchemaVersion}, {"kind", "stickelberger"}, {"p", e.p},
              {"n", e.n},                 {"denominator", e.denominator},  {"entries", std::move(entries)}};
}

std::string cylinder_label(const CylinderSpec& c) {
  std::string out;
  for (const auto& [index, digit] : c.constraints()) {
    if (!out.empty()) out += ';';
    out += std::to_string(index) + ':' + std::to_string(digit);
  }
  return out;
}

void write_csv(std::ostream& out, const GenericityReport& r) {
  CsvWriter w(out);
  w.row({"test", "spec", "hits", "trials", "frequency", "expected", "z", "value"});
  for (const auto& s : r.cylinders) {
    w.row({"cylinder", cylinder_label(s.spec), std::to_string(s.hits), std::to_string(s.trials),
           format_double(s.frequency), format_double(s.expected), format_double(s.z), ""});
  }
  w.row({"star_discrepancy", "", "", std::to_string(r.M), "", "", "", format_double(r.star_discrepancy)});
  for (const auto& ws : r.weyl) {
    std::string k;
    for (auto v : ws.k) k += (k.empty() ? "" : " ") + std::to_string(v);
    w.row({"weyl", k, "", std::to_string(r.M), "", "", "", format_double(ws.magnitude)});
  }
}

void write_csv(std::ostream& out, const StickelbergerElement& e) {
  CsvWriter w(out);
  w.row({"u", "a", "numerator", "denominator"});
  for (const auto& x : e.entries) {
    w.row({std::to_string(x.u), std::to_string(x.a), std::to_string(x.numerator), std::to_string(e.denominator)});
  }
}

}  // namespace padyn
