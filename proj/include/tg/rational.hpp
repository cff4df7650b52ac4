#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace tg {

// Arbitrary-precision integer. All arithmetic in the solver is exact;
// there is no floating point anywhere.
using Int = mpz_class;

// Floor division and the matching remainder in [0, b). Requires b > 0.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);

// Exact rational stored in lowest terms with positive denominator.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
  Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den);

  // Accepts "p" or "p/q", optionally negative. Throws std::invalid_argument.
  static Rational from_string(const std::string& text);

  Int num() const { return Int(v_.get_num()); }
  Int den() const { return Int(v_.get_den()); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Int floor() const;
  Int ceil() const;
  Rational frac() const { return *this - Rational(floor()); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

private:
  mpq_class v_;
};

}  // namespace tg
