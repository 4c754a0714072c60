#include "bohrwalk/integer.hpp"

#include <cctype>
#include <stdexcept>

namespace bohrwalk {

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(std::string_view(s).substr(0, slash));
    Rational den = parse_rational(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, any = true) digits.push_back(s[i]);
  if (i < s.size() && s[i] == '.') {
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, any = true) {
      digits.push_back(s[i]);
      --scale;
    }
  }
  if (!any) throw fail();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != s.size() - i - 1) throw fail();
    scale += e;
    i = s.size();
  }
  if (i != s.size()) throw fail();

  // a leading zero would make GMP read the digits as octal
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  Rational value{BigInt(digits)};
  BigInt ten_pow = 1;
  for (long k = 0; k < (scale < 0 ? -scale : scale); ++k) ten_pow *= 10;
  value = scale < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

BigInt parse_integer(std::string_view text) {
  const Rational r = parse_rational(text);
  if (denominator(r) != 1) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return numerator(r);
}

}  // namespace bohrwalk
