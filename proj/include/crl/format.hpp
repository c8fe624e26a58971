#ifndef CRL_FORMAT_HPP
#define CRL_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace crl {

/// Shortest text that parses back to exactly `value`.
inline std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace crl

#endif  // CRL_FORMAT_HPP
