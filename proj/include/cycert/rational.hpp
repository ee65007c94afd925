#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "cycert/errors.hpp"

namespace cycert {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// High-precision float used for reporting conversions only; decisions are
// always made in exact arithmetic.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1)
        return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) {
    return static_cast<double>(BigFloat(q));
}

inline int sign_of(const Rational& q) {
    return q.sign();
}

inline Rational pow_rational(const Rational& base, unsigned exp) {
    Rational result(1);
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1u;
    }
    return result;
}

}  // namespace cycert
