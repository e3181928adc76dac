#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "quiverspec/errors.hpp"

namespace quiverspec {

/// Exact arbitrary-precision rational. Always stored canonically
/// (gcd(num,den) = 1, den > 0).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational r(Integer(num), Integer(den)); // cpp_rational canonicalizes
    return r;
}

inline std::int64_t to_int64(const Integer& value, const char* what) {
    if (value > Integer(INT64_MAX) || value < Integer(INT64_MIN))
        throw InputError(std::string(what) + " does not fit a 64-bit integer");
    return value.convert_to<std::int64_t>();
}

inline std::string rational_str(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace quiverspec
