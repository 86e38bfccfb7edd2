#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace hstopt {

// Exact arithmetic everywhere a cost or probability is produced: costs are
// sums of powers of a rational edge ratio, so they stay rational and
// comparisons can be bit-exact.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

Int int_pow(const Int& base, std::uint64_t exp);
Rational rational_pow(const Rational& base, std::uint64_t exp);

// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on
// malformed input or q == 0. Decimal notation is rejected on purpose.
Rational parse_rational(const std::string& text);

// "p/q" when the denominator is not 1, otherwise just "p".
std::string to_fraction_string(const Rational& r);

}  // namespace hstopt
