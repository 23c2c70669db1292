#include "ppm/rational.hpp"

#include <cctype>
#include <cmath>

#include "ppm/error.hpp"

namespace ppm {

namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::Parse, "malformed number '" + std::string(text) + "'");
}

BigInt pow10(unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= 10;
  return result;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad_number(text);
  long long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) bad_number(text);
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) bad_number(text);
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 100000) bad_number(text);
    }
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) bad_number(text);

  // A leading zero would make the string constructor read octal.
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  BigInt numerator(digits);
  const long long scale = exponent - frac_digits;
  Rational value;
  if (scale >= 0) {
    value = Rational(numerator * pow10(static_cast<unsigned>(scale)));
  } else {
    value = Rational(numerator, pow10(static_cast<unsigned>(-scale)));
  }
  return negative ? Rational(-value) : value;
}

// Exponent k with den | 10^k, or -1 if the expansion does not terminate.
int terminating_exponent(BigInt den) {
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return -1;
  return std::max(twos, fives);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad_number(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string to_text(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  const int k = terminating_exponent(den);
  if (k < 0) return num.str() + "/" + den.str();
  BigInt scaled = num * (pow10(static_cast<unsigned>(k)) / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (k > 0) {
    if (static_cast<int>(digits.size()) <= k) {
      digits.insert(0, static_cast<std::size_t>(k - digits.size() + 1), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(k), ".");
  }
  return negative ? "-" + digits : digits;
}

bool is_short_decimal(const Rational& value, int max_digits) {
  const BigInt den = boost::multiprecision::denominator(value);
  const int k = terminating_exponent(den);
  if (k < 0) return false;
  BigInt scaled = boost::multiprecision::numerator(value) * (pow10(static_cast<unsigned>(k)) / den);
  if (scaled < 0) scaled = -scaled;
  std::string digits = scaled.str();
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return static_cast<int>(digits.size()) <= max_digits;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::Parse, "non-finite value");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // 53-bit integer mantissa.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result(scaled);
  BigInt power = 1;
  for (int i = 0; i < std::abs(exponent); ++i) power *= 2;
  if (exponent >= 0) return result * Rational(power);
  return result / Rational(power);
}

Rational ceil_to_decimal(const Rational& value, int digits) {
  const BigInt scale = pow10(static_cast<unsigned>(digits));
  const Rational scaled = value * Rational(scale);
  BigInt q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  if (Rational(q) < scaled) q += 1;
  return Rational(q, scale);
}

Rational floor_to_decimal(const Rational& value, int digits) {
  const BigInt scale = pow10(static_cast<unsigned>(digits));
  const Rational scaled = value * Rational(scale);
  BigInt q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  if (Rational(q) > scaled) q -= 1;
  return Rational(q, scale);
}

}  // namespace ppm
