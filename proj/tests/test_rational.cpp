#include <doctest.h>

#include "tg/rational.hpp"

using namespace tg;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  Rational a(Int(6), Int(-4));
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.str() == "-3/2");
  CHECK(Rational(Int(4), Int(2)).str() == "2");
}

TEST_CASE("arithmetic is exact") {
  Rational a(Int(1), Int(3));
  Rational b(Int(1), Int(6));
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK(a > b);
  CHECK(-a < b);
}

TEST_CASE("floor and ceil on negatives") {
  CHECK(Rational(Int(7), Int(2)).floor() == 3);
  CHECK(Rational(Int(-7), Int(2)).floor() == -4);
  CHECK(Rational(Int(-7), Int(2)).ceil() == -3);
  CHECK(Rational(Int(-4), Int(2)).floor() == -2);
  CHECK(Rational(Int(-7), Int(2)).frac().str() == "1/2");
}

TEST_CASE("parsing literals") {
  CHECK(Rational::from_string("-3/4").str() == "-3/4");
  CHECK(Rational::from_string("5").str() == "5");
  CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(Int(1), Int(0)), std::invalid_argument);
}

TEST_CASE("floor division helpers") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(mod_floor(Int(-7), Int(2)) == 1);
  CHECK(ceil_div(Int(7), Int(2)) == 4);
  CHECK(ceil_div(Int(-7), Int(2)) == -3);
}
