#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "hamming_boot/errors.hpp"

namespace hamming_boot {

/// Exact rational arithmetic (arbitrary-precision, always normalized with
/// positive denominator). The exponent tables are exact rational data;
/// floats would corrupt comparisons like 19/14 vs 15/11.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Canonical "num/den" form, e.g. "2/1", "19/14".
std::string rational_string(const Rational& r);

/// Accepts "num/den", plain integers, and decimal literals ("1.9" -> 19/10).
Rational parse_rational(const std::string& text);

/// floor(num/den) for a rational; exact.
BigInt rational_floor(const Rational& r);

}  // namespace hamming_boot
