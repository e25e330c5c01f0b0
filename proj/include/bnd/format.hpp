#ifndef BND_FORMAT_HPP
#define BND_FORMAT_HPP

#include <charconv>
#include <string>
#include <vector>

namespace bnd
{

// Locale-independent shortest round-trip text, or fixed significant digits when precision > 0.
inline std::string format_double(double v, int precision = 0)
{
    char buf[64];
    const auto res = precision > 0 ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision)
                                   : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_point(const std::vector<double> &p, int precision = 0)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? ", " : "") + format_double(p[i], precision);
    }
    return s + ")";
}

} // namespace bnd

#endif
