#pragma once

// Exact rationals and exact Gaussian elimination over Q.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "apharm/error.hpp"

namespace apharm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p" (p, q decimal integers, q != 0).
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s) -> BigInt {
        s = trim(s);
        std::size_t digits_from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == digits_from)
            throw invalid_input("malformed rational '" + std::string(text) + "'");
        for (std::size_t i = digits_from; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw invalid_input("malformed rational '" + std::string(text) + "'");
        }
        std::string owned(s[0] == '+' ? s.substr(1) : s);
        return BigInt(owned);
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw invalid_input("zero denominator in rational '" + std::string(text) + "'");
    return Rational(num, den);
}

// Always "p/q" with q > 0, e.g. "0/1", "-3/2".
inline std::string format_rational(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

using RationalMatrix = std::vector<std::vector<Rational>>;

// Result of reduced row echelon form: the nonzero rows and their pivot columns.
struct RowEchelon {
    RationalMatrix rows;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return rows.size(); }
};

// Exact reduced row echelon form. All rows must share one length.
inline RowEchelon reduced_row_echelon(RationalMatrix m) {
    RowEchelon out;
    if (m.empty()) return out;
    const std::size_t cols = m.front().size();
    for (const auto& row : m) {
        if (row.size() != cols) throw invalid_input("ragged rational matrix");
    }

    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < m.size(); ++c) {
        std::size_t r = pivot_row;
        while (r < m.size() && m[r][c] == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[pivot_row]);

        const Rational inv = 1 / m[pivot_row][c];
        for (auto& x : m[pivot_row]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == pivot_row || m[i][c] == 0) continue;
            const Rational factor = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[pivot_row][j];
        }
        out.pivots.push_back(c);
        ++pivot_row;
    }
    m.resize(pivot_row);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rational_rank(RationalMatrix m) {
    return reduced_row_echelon(std::move(m)).rank();
}

} // namespace apharm
