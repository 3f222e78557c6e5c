#include "walkerlie/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace walkerlie {

Rational rational_from_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty numeric literal");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') {
    neg = true;
    ++i;
  }
  std::string digits;
  std::size_t frac_len = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed numeric literal: " + text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("malformed numeric literal: " + text);
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed numeric literal: " + text);
  BigInt num(digits);
  BigInt den = 1;
  for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
  Rational q(num, den);
  return neg ? -q : q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings turn the mantissa into an integer.
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational q(mant);
  if (exp > 0) {
    q *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    q /= Rational(BigInt(1) << (-exp));
  }
  return q;
}

Rational rational_from_string(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return rational_from_decimal(text);
  Rational num = rational_from_decimal(text.substr(0, slash));
  Rational den = rational_from_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  return num / den;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace walkerlie
