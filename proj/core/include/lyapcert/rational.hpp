#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lyapcert {

// Exact arbitrary-precision rational, the coefficient type of every
// polynomial in the toolkit. Conversion to double happens only at the
// SDP / simulation boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3", "-3/4", or a plain decimal such as "0.004" into an exact
// rational. Throws std::invalid_argument on anything else.
Rational rational_from_string(const std::string& s);

// Exact dyadic rational equal to x. Throws on NaN or infinity.
Rational rational_from_double(double x);

double to_double(const Rational& r);

// Canonical form: "n" when the denominator is 1, otherwise "n/d".
std::string to_string(const Rational& r);

// r^k for k >= 0.
Rational rational_pow(const Rational& r, int k);

}  // namespace lyapcert
