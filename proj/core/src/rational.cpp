#include "faircoin/rational.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace faircoin {

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return BigInt(std::string(text));
}

}  // namespace

NumericMode parse_numeric_mode(std::string_view text) {
  if (text == "exact" || text == "rational") return NumericMode::exact;
  if (text == "float" || text == "float64" || text == "double") return NumericMode::float64;
  throw std::invalid_argument("unknown numeric mode '" + std::string(text) + "'");
}

std::string to_string(NumericMode mode) {
  return mode == NumericMode::exact ? "exact" : "float64";
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(parse_integer(num_text));

  const auto den_text = text.substr(slash + 1);
  if (!is_integer_literal(den_text) || den_text.front() == '-' || den_text.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num_text), den);
}

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, end);
}

Rational pow2(int exponent) {
  BigInt one = 1;
  if (exponent >= 0) return Rational(one << exponent);
  return Rational(one, one << (-exponent));
}

}  // namespace faircoin
