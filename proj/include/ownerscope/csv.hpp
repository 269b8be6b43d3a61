#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ownerscope::csv {

// Quotes a field iff it contains a comma, quote, or newline (RFC 4180 style).
std::string escape(std::string_view field);

// Splits one CSV line into fields, honoring double-quoted fields.
// Raises SchemaViolation with the given 1-based line number on bad quoting.
std::vector<std::string> split_line(std::string_view line, long line_no);

// Locale-free shortest round-trip formatting / exact parsing.
std::string format_double(double value);
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

}  // namespace ownerscope::csv
