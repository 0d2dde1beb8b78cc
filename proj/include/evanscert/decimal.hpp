#pragma once

// Decimal-string conversions.  Serialized endpoints use the shortest decimal
// that round-trips the double exactly, so files are platform independent.

#include <charconv>
#include <string>
#include <system_error>

#include "evanscert/interval.hpp"

namespace evanscert {

inline std::string to_decimal(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

// Exact parse of a shortest-round-trip decimal produced by to_decimal.
inline double from_decimal_exact(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw DomainError("bad decimal literal: " + s);
    return v;
}

// Enclosure of an arbitrary user-supplied decimal (one-ulp pad around the
// correctly rounded parse).
inline RealInterval parse_decimal_enclosure(const std::string& s) {
    const double d = from_decimal_exact(s);
    return RealInterval(rnd::next_down(d), rnd::next_up(d));
}

// "p/q" or a decimal; rationals are evaluated with interval division.
inline RealInterval parse_number_enclosure(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal_enclosure(s);
    const RealInterval p = parse_decimal_enclosure(s.substr(0, slash));
    const RealInterval q = parse_decimal_enclosure(s.substr(slash + 1));
    return p / q;
}

inline std::string interval_to_string(const RealInterval& x) {
    return "[" + to_decimal(x.lo()) + "," + to_decimal(x.hi()) + "]";
}

}  // namespace evanscert
