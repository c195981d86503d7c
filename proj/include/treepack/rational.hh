/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_RATIONAL_HH
#define TREEPACK_RATIONAL_HH 1

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace treepack
{
    using Rational = boost::rational<std::int64_t>;

    /// Parses "0.25", "3", "-1.5" or "2/7" exactly.
    auto parse_rational(std::string_view text) -> Rational;

    /// Best rational approximation with bounded denominator (continued fractions).
    /// Decimal literals such as 0.4 come back as 2/5.
    auto to_rational(double value, std::int64_t max_denominator = 1'000'000) -> Rational;

    auto to_double(const Rational & r) -> double;

    auto to_string(const Rational & r) -> std::string;

    auto floor_of(const Rational & r) -> std::int64_t;
    auto ceil_of(const Rational & r) -> std::int64_t;

    inline auto abs_of(const Rational & r) -> Rational
    {
        return r < 0 ? -r : r;
    }

    /// a = b ± c, inclusive on both sides.
    inline auto within(const Rational & a, const Rational & b, const Rational & c) -> bool
    {
        return b - c <= a && a <= b + c;
    }
}

#endif
