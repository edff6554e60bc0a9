#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace padyn {

/// Quotes a field when it contains a comma, quote, CR or LF; quotes are doubled.
[[nodiscard]] std::string csv_escape(std::string_view field);

/// Writes RFC 4180 rows terminated by LF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);
  void row(std::initializer_list<std::string_view> fields);

 private:
  std::ostream& out_;
};

/// printf-style "%.17g", enough to round-trip a double.
[[nodiscard]] std::string format_double(double v);

}  // namespace padyn
