#include "tg/rational.hpp"

#include <stdexcept>

namespace tg {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational::Rational(const Int& num, const Int& den) : v_(num, den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
}

Int Rational::floor() const {
  return floor_div(num(), den());
}

Int Rational::ceil() const {
  return ceil_div(num(), den());
}

std::string Rational::str() const {
  std::string s = num().get_str();
  if (!is_integer()) s += "/" + den().get_str();
  return s;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

}  // namespace tg
