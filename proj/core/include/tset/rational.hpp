#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace tset {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* floor toward minus infinity; cpp_int division truncates toward zero */
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& r) {
    return floor_div(numerator(r), denominator(r));
}

/* representative in [0, 1) */
inline Rat rat_mod1(const Rat& r) {
    return r - Rat(rat_floor(r));
}

inline int rat_sign(const Rat& r) {
    return r.sign();
}

std::string rat_to_string(const Rat& r);

/* fixed-point decimal rendering, truncated toward zero; deterministic */
std::string rat_to_decimal(const Rat& r, int digits = 12);

/* parses "p", "-p/q" or a plain decimal like "0.25" */
Rat parse_rational(std::string_view text);

double rat_to_double(const Rat& r);

} // namespace tset
