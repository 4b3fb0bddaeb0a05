#pragma once

// Small text helpers shared by the parsers in this library.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "nlse/errors.hpp"

namespace nlse::text {

/// Shortest decimal form that round-trips through strtod.
inline std::string shortest(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double to_double(std::string_view token) {
    const std::string s(trim(token));
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ConfigError("bad number '" + s + "'");
    return v;
}

/// Splits "a, b, c" on commas, trimming each piece; empty input gives no pieces.
inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    while (true) {
        const auto comma = s.find(',');
        out.emplace_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

struct Call {
    std::string name;
    std::vector<double> args;
};

/// "name" or "name(a, b, ...)".
inline Call parse_call(std::string_view expr) {
    expr = trim(expr);
    Call call;
    const auto open = expr.find('(');
    if (open == std::string_view::npos) {
        call.name = std::string(expr);
        return call;
    }
    if (expr.back() != ')') throw ConfigError("malformed expression '" + std::string(expr) + "'");
    call.name = std::string(trim(expr.substr(0, open)));
    for (const auto& token : split_list(expr.substr(open + 1, expr.size() - open - 2)))
        call.args.push_back(to_double(token));
    return call;
}

inline void expect_args(const Call& c, std::size_t n) {
    if (c.args.size() != n)
        throw ConfigError(c.name + ": expected " + std::to_string(n) + " arguments, got " +
                          std::to_string(c.args.size()));
}

inline std::string call_syntax(std::string_view name, std::initializer_list<double> args) {
    std::string s(name);
    s += '(';
    bool first = true;
    for (double a : args) {
        if (!first) s += ',';
        s += shortest(a);
        first = false;
    }
    s += ')';
    return s;
}

}  // namespace nlse::text
