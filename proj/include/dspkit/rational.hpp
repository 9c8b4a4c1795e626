#ifndef DSPKIT_RATIONAL_HPP
#define DSPKIT_RATIONAL_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dspkit/error.hpp"

namespace dspkit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" or "p"; canonical (reduced, denominator positive, "/1" omitted).
inline std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(std::string_view s)
{
    auto parse_int = [&](std::string_view t) {
        if (t.empty())
            throw ParseError("empty integer in rational '" + std::string(s) + "'");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            throw ParseError("bad rational '" + std::string(s) + "'");
        for (std::size_t k = i; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9')
                throw ParseError("bad rational '" + std::string(s) + "'");
        return BigInt(std::string(t[0] == '+' ? t.substr(1) : t));
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

/// Dense matrix over Q, row-major.
struct RationalMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> data;

    RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Rank by Gaussian elimination in exact arithmetic.
inline std::size_t exact_rank(RationalMatrix m)
{
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && m(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows)
            continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m(pivot, j), m(rank, j));
        for (std::size_t i = rank + 1; i < m.rows; ++i) {
            if (m(i, col) == 0)
                continue;
            Rational f = m(i, col) / m(rank, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace dspkit

#endif
