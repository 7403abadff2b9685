#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Small helpers shared by the CSV readers and writers.

namespace uavbeam::text {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// Splits one CSV line on commas. No quoting support; none of our files need it.
std::vector<std::string_view> split_csv_line(std::string_view line);

/// Splits text into lines, dropping a trailing '\r' and blank trailing lines.
std::vector<std::string_view> split_lines(std::string_view text);

/// Parses a double, throwing ParseError that names `field` and `line_no`.
double parse_double(std::string_view token, std::string_view field, std::size_t line_no,
                    const std::string& source);
long long parse_int(std::string_view token, std::string_view field, std::size_t line_no,
                    const std::string& source);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace uavbeam::text
