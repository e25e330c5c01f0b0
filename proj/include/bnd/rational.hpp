#ifndef BND_RATIONAL_HPP
#define BND_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bnd
{

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integral(const Rational &r)
{
    return boost::multiprecision::denominator(r) == 1;
}

inline Integer to_integer(const Rational &r)
{
    if (!is_integral(r)) {
        throw std::domain_error("rational " + r.str() + " is not an integer");
    }
    return boost::multiprecision::numerator(r);
}

inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer result = 1;
    for (long i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

inline Rational pow(const Rational &base, unsigned e)
{
    Rational result = 1;
    for (unsigned i = 0; i < e; ++i) {
        result *= base;
    }
    return result;
}

// "3", "3/10" or "-7/2"; the denominator is omitted when it is 1.
inline std::string to_string(const Rational &r)
{
    return r.str();
}

inline std::int64_t to_int64(const Integer &v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("integer " + v.str() + " does not fit in 64 bits");
    }
    return v.convert_to<std::int64_t>();
}

// Exact conversion of a decimal literal ("12", "0.3", "1.5e-2") by digit shifting.
// Returns false if the text is not a well-formed unsigned decimal.
inline bool parse_decimal(std::string_view text, Rational &out)
{
    std::size_t i = 0;
    Integer mantissa = 0;
    long scale = 0;
    bool any_digit = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        mantissa = mantissa * 10 + (text[i] - '0');
        any_digit = true;
        ++i;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            mantissa = mantissa * 10 + (text[i] - '0');
            --scale;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit) {
        return false;
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            negative = text[i] == '-';
            ++i;
        }
        if (i == text.size()) {
            return false;
        }
        long exponent = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 100000) {
                return false;
            }
            ++i;
        }
        scale += negative ? -exponent : exponent;
    }
    if (i != text.size()) {
        return false;
    }
    Integer ten_power = 1;
    for (long k = 0; k < (scale < 0 ? -scale : scale); ++k) {
        ten_power *= 10;
    }
    out = scale >= 0 ? Rational(mantissa * ten_power) : Rational(mantissa, ten_power);
    return true;
}

} // namespace bnd

#endif
