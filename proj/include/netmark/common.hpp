#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace netmark {

/// Error raised for invalid data or unsatisfiable preconditions.
/// The command-line tool maps this to exit code 1 (data error); usage
/// mistakes (bad flags) are handled separately and exit with code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

namespace detail {

/// Shortest decimal string that round-trips to the same double.
/// Locale-independent, so emitted reports are byte-deterministic.
inline std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// Fixed-precision formatting used by table output (default two decimals,
/// matching the precision of the published tables these reports mirror).
inline std::string format_fixed(double value, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    std::string s(buf);
    // Normalize "-0.00" to "0.00" so equal values always print identically.
    if (!s.empty() && s[0] == '-') {
        bool nonzero_digit = false;
        for (char c : s)
            if (c >= '1' && c <= '9') { nonzero_digit = true; break; }
        if (!nonzero_digit) s.erase(0, 1);
    }
    return s;
}

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

/// Split one CSV record into fields. Fields may be double-quoted; a doubled
/// quote inside a quoted field is a literal quote; separators inside quotes
/// are literal. Unterminated quotes consume the rest of the record.
inline std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
                else quoted = false;
            } else cur += c;
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

/// Quote a CSV field only when it contains a separator, quote, or newline.
inline std::string csv_field(std::string_view s) {
    bool needs_quote = false;
    for (char c : s)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') { needs_quote = true; break; }
    if (!needs_quote) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

/// Strict full-field integer parse; nullopt on any trailing garbage.
inline std::optional<long> parse_long(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    long v = 0;
    const auto* begin = t.data();
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
    return v;
}

/// Strict full-field double parse; nullopt on any trailing garbage.
inline std::optional<double> parse_double(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double v = 0;
    const auto* begin = t.data();
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
    return v;
}

} // namespace detail
} // namespace netmark
