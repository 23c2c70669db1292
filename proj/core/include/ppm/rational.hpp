#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace ppm {

// Exact rational arithmetic used by every predicate in the error-free path.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "3", "-0.25", "1e-3", "2.5E+1" or "7/20" without rounding.
/// Throws Error(Parse) on malformed text.
Rational parse_rational(std::string_view text);

/// Exact decimal text when the value terminates, otherwise "p/q".
std::string to_text(const Rational& value);

/// True when `value` has a terminating decimal expansion with at most
/// `max_digits` significant digits.
bool is_short_decimal(const Rational& value, int max_digits = 15);

/// Nearest double; for reporting only.
double to_double(const Rational& value);

/// Exact value of a finite double.
Rational from_double(double value);

/// Smallest multiple of 10^-digits that is >= value (resp. <= value).
Rational ceil_to_decimal(const Rational& value, int digits);
Rational floor_to_decimal(const Rational& value, int digits);

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(num) / Rational(den);
}

}  // namespace ppm
