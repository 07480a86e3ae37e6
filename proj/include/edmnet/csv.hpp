#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace edmnet::csv {

// Splits one CSV line on commas. No quoting support: the formats used
// here are plain numeric/identifier fields. A trailing '\r' is stripped.
std::vector<std::string> split(std::string_view line);

std::string trim(std::string_view s);

// Strict double parse: the whole field must be consumed and finite.
bool parse_double(const std::string& field, double& out);

bool parse_int(const std::string& field, long& out);

// Validates YYYY-MM-DD including month lengths and leap years.
bool is_iso_date(const std::string& s);

}  // namespace edmnet::csv
