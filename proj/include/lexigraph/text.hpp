#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexigraph {

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double value);

// Strict double parser; the whole token must be consumed.
std::optional<double> parse_double(std::string_view token);

// Strict unsigned integer parser; the whole token must be consumed.
std::optional<std::uint64_t> parse_uint(std::string_view token);

// Fixed-point formatting with the given number of decimals, for reports.
std::string format_fixed(double value, int decimals);

std::string_view trim(std::string_view s);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char delim);

// Splits on runs of spaces and tabs, dropping empty fields.
std::vector<std::string_view> split_ws(std::string_view s);

// Number of UTF-8 code points; malformed bytes count as one code point each.
std::size_t utf8_length(std::string_view word);

// Last n code points, or nothing when the word has fewer than n.
std::optional<std::string> utf8_suffix(std::string_view word, std::size_t n);

// First n code points, or nothing when the word has fewer than n.
std::optional<std::string> utf8_prefix(std::string_view word, std::size_t n);

} // namespace lexigraph
