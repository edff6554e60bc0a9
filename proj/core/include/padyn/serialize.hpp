#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "padyn/criterion.hpp"
#include "padyn/equidist.hpp"
#include "padyn/padic.hpp"
#include "padyn/solenoid.hpp"
#include "padyn/symbolic.hpp"

namespace padyn {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Readers throw InvalidArgument on malformed input and the usual domain errors
// (InvalidPrime, InvalidDigit) on out-of-range values.

/// {"p": p, "digits": [t_0, t_1, ...]}
[[nodiscard]] Json to_json(const PadicInt& a);
[[nodiscard]] PadicInt padic_from_json(const Json& j);

/// {"p": p, "neg": [a_{-1}, a_{-2}, ...], "nonneg": [t_0, t_1, ...]}
[[nodiscard]] Json to_json(const TwoSidedWord& w);
[[nodiscard]] TwoSidedWord word_from_json(const Json& j);

/// {"p": p, "constraints": [[index, digit], ...]} sorted by index.
[[nodiscard]] Json to_json(const CylinderSpec& c);
[[nodiscard]] CylinderSpec cylinder_from_json(const Json& j);

/// {"padic": {...}, "real_digits": [a_{-1}, ...]}
[[nodiscard]] Json to_json(const SolenoidPoint& s);
[[nodiscard]] SolenoidPoint point_from_json(const Json& j);

[[nodiscard]] Json to_json(const GenericityReport& r);
[[nodiscard]] Json to_json(const JointReport& r);
[[nodiscard]] Json to_json(const ReductionReport& r);
/// {"p", "d", "witness": [alpha_digits, n] or null, "scanned": {...}}
[[nodiscard]] Json to_json(const ScanResult& r);
[[nodiscard]] Json to_json(const StickelbergerElement& e);

/// "index:digit" pairs joined by ';', e.g. "0:1;1:2". Empty for the whole space.
[[nodiscard]] std::string cylinder_label(const CylinderSpec& c);

/// One row per statistic: test, spec, hits, trials, frequency, expected, z, value.
void write_csv(std::ostream& out, const GenericityReport& r);
void write_csv(std::ostream& out, const StickelbergerElement& e);

}  // namespace padyn
