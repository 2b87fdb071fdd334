#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nvcache::textio {

inline constexpr std::string_view kFormatVersion = "nvcache-dse v1";

std::string_view trim(std::string_view s);

// Drops everything from the first '#' onward, then trims. Used by every
// text format in the project (key-value files, CSVs, traces).
std::string_view strip_comment(std::string_view line);

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_csv(std::string_view line);

// Throw Error(Parse, "NonNumeric", context) on failure.
double parse_double(std::string_view token, const std::string& context);
// Accepts integral-valued scientific notation (profiler exports write 2.6e7).
long long parse_count(std::string_view token, const std::string& context);

// If the line is a "# nvcache-dse vN" marker, verify it matches the
// supported version (Error(Parse, "SchemaMismatch") otherwise).
void check_version_marker(std::string_view line);

std::string read_file(const std::string& path);
// Write-then-rename so partially written reports are never observed.
void atomic_write_file(const std::string& path, std::string_view content);

}  // namespace nvcache::textio
