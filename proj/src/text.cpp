#include "lexigraph/text.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <system_error>

namespace lexigraph {

std::string format_double(double value) {
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view token) {
    if (token.empty()) return std::nullopt;
    double value = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_uint(std::string_view token) {
    if (token.empty()) return std::nullopt;
    std::uint64_t value = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::string format_fixed(double value, int decimals) {
    std::array<char, 64> buf;
    int n = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        std::size_t pos = s.find(delim, begin);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(begin));
            return out;
        }
        out.push_back(s.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t begin = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > begin) out.push_back(s.substr(begin, i - begin));
    }
    return out;
}

namespace {

bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

// Offsets of code point starts, plus the end offset as a sentinel.
std::vector<std::size_t> utf8_boundaries(std::string_view word) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!is_continuation(static_cast<unsigned char>(word[i])) || starts.empty()) {
            starts.push_back(i);
        }
    }
    starts.push_back(word.size());
    return starts;
}

} // namespace

std::size_t utf8_length(std::string_view word) {
    return utf8_boundaries(word).size() - 1;
}

std::optional<std::string> utf8_suffix(std::string_view word, std::size_t n) {
    auto b = utf8_boundaries(word);
    std::size_t len = b.size() - 1;
    if (len < n) return std::nullopt;
    return std::string(word.substr(b[len - n]));
}

std::optional<std::string> utf8_prefix(std::string_view word, std::size_t n) {
    auto b = utf8_boundaries(word);
    std::size_t len = b.size() - 1;
    if (len < n) return std::nullopt;
    return std::string(word.substr(0, b[n]));
}

} // namespace lexigraph
