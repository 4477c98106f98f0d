#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace croplink {

// Comma split with whitespace trimming; no quoting, none of our formats
// needs it.
std::vector<std::string> split_csv_line(std::string_view line);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Strict full-token parse. Returns false on empty/garbage/trailing junk.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, int& out);

// %.6g-style formatting used for all report output, %.*g in general.
std::string format_num(double value, int significant_digits = 6);

}  // namespace croplink
