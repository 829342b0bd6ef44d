#ifndef HPGA_SRC_TEXT_HPP
#define HPGA_SRC_TEXT_HPP

// Line and token helpers shared by the text parsers. Not installed.

#include <array>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace hpga::detail {

inline std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const auto b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t b = 0;
    for (;;) {
        const auto e = s.find(sep, b);
        out.push_back(s.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
        if (e == std::string_view::npos) break;
        b = e + 1;
    }
    return out;
}

/// Calls f(line_number, line) for each line; accepts LF or CRLF.
template <typename F>
void for_each_line(std::string_view text, F&& f) {
    std::size_t lineno = 0;
    std::size_t b = 0;
    while (b < text.size()) {
        auto e = text.find('\n', b);
        if (e == std::string_view::npos) e = text.size();
        auto line = text.substr(b, e - b);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        f(++lineno, line);
        b = e + 1;
    }
}

inline std::size_t count_lines(std::string_view text) {
    std::size_t n = 0;
    for_each_line(text, [&](std::size_t, std::string_view) { ++n; });
    return n == 0 ? 1 : n;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Shortest round-trip decimal, locale independent.
inline std::string format_number(double x) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), ptr);
}

}  // namespace hpga::detail

#endif  // HPGA_SRC_TEXT_HPP
