#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flowtime/errors.hpp"
#include "flowtime/extended_rational.hpp"
#include "flowtime/interval_union.hpp"
#include "flowtime/rational.hpp"

using namespace flowtime;

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(2, 4);
  CHECK(a.numerator() == 1);
  CHECK(a.denominator() == 2);
  Rational b(-3, 6);
  CHECK(b.numerator() == -1);
  CHECK(b.denominator() == 2);
  CHECK((a + b).is_zero());
  CHECK(a * Rational(4) == Rational(2));
  CHECK(Rational(1) / Rational(3) + Rational(1) / Rational(6) == Rational(1, 2));
  CHECK(Rational(7, 3) - Rational(1, 3) == Rational(2));
  CHECK(Rational(-5, 4) < Rational(-1, 4));
  CHECK_THROWS_AS(Rational(1) / Rational(0), input_error);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse("-12") == Rational(-12));
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-8, 2).str() == "-4");
  CHECK_THROWS_AS(Rational::parse("1/0"), input_error);
  CHECK_THROWS_AS(Rational::parse("x"), input_error);
  CHECK_THROWS_AS(Rational::parse(""), input_error);
}

TEST_CASE("rational floor and ceil") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4).floor() == 4);
  CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("extended rational absorbs infinity") {
  ExtendedRational inf = ExtendedRational::infinity();
  ExtendedRational x(Rational(5, 2));
  CHECK((inf + x).is_plus_inf());
  CHECK((x + inf).is_plus_inf());
  CHECK((x - inf).is_minus_inf());
  CHECK(x < inf);
  CHECK(ExtendedRational::minus_infinity() < x);
  CHECK(inf == ExtendedRational::infinity());
  CHECK_THROWS_AS(inf + ExtendedRational::minus_infinity(), internal_error);
  CHECK(max(inf, x) == inf);
  CHECK(min(inf, x) == x);
}

TEST_CASE("interval union merges and measures") {
  IntervalUnion u;
  u.add(Rational(0), Rational(1));
  u.add(Rational(2), Rational(3));
  CHECK(u.intervals().size() == 2);
  CHECK(u.measure() == Rational(2));
  u.add(Rational(1), Rational(2));  // touches both
  CHECK(u.intervals().size() == 1);
  CHECK(u.measure() == Rational(3));
  CHECK(u.contains(Rational(3)));
  CHECK(!u.contains(Rational(7, 2)));

  IntervalUnion point = IntervalUnion::single(Rational(5), Rational(5));
  CHECK(point.measure().is_zero());
  CHECK(point.contains(Rational(5)));
  CHECK(point.subset_of(IntervalUnion::single(Rational(4), Rational(6))));
  CHECK(!point.subset_of(u));

  IntervalUnion shifted = u.shifted(Rational(-1, 2));
  CHECK(shifted.min() == Rational(-1, 2));
  CHECK(shifted.max() == Rational(5, 2));
}
