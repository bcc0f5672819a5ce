#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace torus_census {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a normalized rational. Throws ParseError.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Lowest terms, sign on the numerator, "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Largest n >= 0 with n*n <= value (value >= 0).
Integer floor_sqrt(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

int compare_lex(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace torus_census
