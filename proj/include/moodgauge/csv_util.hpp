#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "moodgauge/core.hpp"

namespace moodgauge::csv {

/// RFC-4180 field quoting: wrap in double quotes only when the field holds
/// a comma, quote, or line break; embedded quotes are doubled.
inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

/// Shortest round-trip decimal form, identical across runs and platforms.
inline std::string format_double(double value) {
    char buf[32];
    auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

inline double parse_double(std::string_view text) {
    double value = 0.0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw mood_error(errc::malformed_row,
                         "unparseable number '" + std::string(text) + "'");
    }
    return value;
}

/// Splits CSV content into lines, accepting LF and CRLF endings. A single
/// trailing newline does not produce an empty final line.
std::vector<std::string_view> split_lines(std::string_view content);

/// Splits one CSV record into fields, honoring RFC-4180 quoting.
std::vector<std::string> split_record(std::string_view line);

}  // namespace moodgauge::csv
