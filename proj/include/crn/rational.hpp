#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace crn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact integer power; `exp` may be negative when `base` is nonzero.
Rational rational_pow(const Rational& base, long long exp);

/// Parses "p/q", "n", or a plain decimal like "0.25" (converted exactly).
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical form: "p/q" with positive denominator, or just "p" when integral.
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

inline Rational rational_abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// n! as an exact integer; n must be nonnegative.
BigInt factorial(long long n);

}  // namespace crn
