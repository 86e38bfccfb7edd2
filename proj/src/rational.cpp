#include "hstopt/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hstopt {

Int int_pow(const Int& base, std::uint64_t exp) {
  Int result = 1;
  Int b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return result;
}

Rational rational_pow(const Rational& base, std::uint64_t exp) {
  return Rational(int_pow(numerator(base), exp), int_pow(denominator(base), exp));
}

Rational parse_rational(const std::string& text) {
  auto is_integer = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer(text)) {
      throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
    return Rational(Int(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den)) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(Int(num), d);
}

std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace hstopt
