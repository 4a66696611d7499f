#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace logcloak {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Rounds half away from zero to `places` decimal digits, e.g. 37/60 -> "0.6167".
std::string to_decimal(const Rational& value, unsigned places = 4);

/// Exact parse of "0.43", "1", "1/14", "-2.5". Throws DomainError on bad input.
Rational parse_rational(std::string_view text);

/// Converts to double for reporting only; never used in metric arithmetic.
double to_double(const Rational& value);

} // namespace logcloak
