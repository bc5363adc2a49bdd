#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace faircoin {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Arithmetic used by games, strategies and tables.
enum class NumericMode { exact, float64 };

NumericMode parse_numeric_mode(std::string_view text);
std::string to_string(NumericMode mode);

/// Parses "n", "-n" or "n/d" (d > 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; the denominator is always written, so 2 is "2/1".
std::string to_string(const Rational& value);

/// Shortest round-trip decimal for a double.
std::string format_double(double value);

/// 2^exponent as an exact rational; negative exponents give dyadic fractions.
Rational pow2(int exponent);

/// Conversion from the exact parameter domain into a game's number type.
template <class Num>
Num from_rational(const Rational& value);

template <>
inline Rational from_rational<Rational>(const Rational& value) {
  return value;
}

template <>
inline double from_rational<double>(const Rational& value) {
  return value.convert_to<double>();
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }
inline double to_double(double value) { return value; }

/// Textual form of a game number: "num/den" for exact values, decimal for doubles.
inline std::string format_number(const Rational& value) { return to_string(value); }
inline std::string format_number(double value) { return format_double(value); }

}  // namespace faircoin
