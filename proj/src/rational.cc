/* vim: set sw=4 sts=4 et : */

#include <treepack/rational.hh>

#include <cmath>
#include <stdexcept>

namespace treepack
{
    auto parse_rational(std::string_view text) -> Rational
    {
        auto fail = [&] () -> Rational {
            throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
        };

        if (text.empty())
            return fail();

        if (auto slash = text.find('/') ; slash != std::string_view::npos) {
            Rational num = parse_rational(text.substr(0, slash));
            Rational den = parse_rational(text.substr(slash + 1));
            if (den == 0)
                return fail();
            return num / den;
        }

        bool negative = false;
        std::size_t pos = 0;
        if (text[pos] == '-' || text[pos] == '+') {
            negative = text[pos] == '-';
            ++pos;
        }

        std::int64_t numerator = 0, denominator = 1;
        bool seen_digit = false, seen_point = false;
        for ( ; pos < text.size() ; ++pos) {
            char c = text[pos];
            if (c == '.') {
                if (seen_point)
                    return fail();
                seen_point = true;
            }
            else if (c >= '0' && c <= '9') {
                seen_digit = true;
                if (numerator > (INT64_MAX / 10) - 10 || (seen_point && denominator > INT64_MAX / 10))
                    throw std::out_of_range("rational literal too long: '" + std::string(text) + "'");
                numerator = numerator * 10 + (c - '0');
                if (seen_point)
                    denominator *= 10;
            }
            else
                return fail();
        }

        if (! seen_digit)
            return fail();

        Rational result(numerator, denominator);
        return negative ? -result : result;
    }

    auto to_rational(double value, std::int64_t max_denominator) -> Rational
    {
        if (! std::isfinite(value))
            throw std::invalid_argument("cannot convert non-finite value to a rational");

        bool negative = value < 0;
        double x = std::fabs(value);

        // convergents h/k of the continued fraction of x
        std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        double rest = x;
        for (int iter = 0 ; iter < 64 ; ++iter) {
            double a_floor = std::floor(rest);
            if (a_floor > 1e15)
                break;
            auto a = static_cast<std::int64_t>(a_floor);
            std::int64_t h2 = a * h1 + h0, k2 = a * k1 + k0;
            if (k2 > max_denominator)
                break;
            h0 = h1; h1 = h2; k0 = k1; k1 = k2;
            double frac = rest - a_floor;
            if (frac < 1e-12 || std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-15 * std::max(1.0, x))
                break;
            rest = 1.0 / frac;
        }

        Rational result(h1, k1);
        return negative ? -result : result;
    }

    auto to_double(const Rational & r) -> double
    {
        return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
    }

    auto to_string(const Rational & r) -> std::string
    {
        if (r.denominator() == 1)
            return std::to_string(r.numerator());
        return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    }

    auto floor_of(const Rational & r) -> std::int64_t
    {
        std::int64_t q = r.numerator() / r.denominator();
        if (r.numerator() % r.denominator() != 0 && r.numerator() < 0)
            --q;
        return q;
    }

    auto ceil_of(const Rational & r) -> std::int64_t
    {
        std::int64_t q = r.numerator() / r.denominator();
        if (r.numerator() % r.denominator() != 0 && r.numerator() > 0)
            ++q;
        return q;
    }
}
