#include "torus_census/rational.hpp"

#include "torus_census/errors.hpp"

#include <cctype>

namespace torus_census {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer integer_from(std::string_view s) {
  if (!is_integer_literal(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return Integer(text, 10);
}

}  // namespace

Integer parse_integer(std::string_view text) { return integer_from(text); }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(integer_from(text));
  Integer num = integer_from(text.substr(0, slash));
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') throw ParseError("negative denominator: '" + std::string(text) + "'");
  Integer den = integer_from(den_text);
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer floor_sqrt(const Rational& value) {
  if (value < 0) return 0;
  Integer fl = floor(value);
  Integer n;
  mpz_sqrt(n.get_mpz_t(), fl.get_mpz_t());
  // floor(sqrt(x)) == floor(sqrt(floor(x))) for x >= 0
  return n;
}

int compare_lex(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

}  // namespace torus_census
