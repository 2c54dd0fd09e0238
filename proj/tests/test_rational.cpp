#include <doctest.h>

#include "acmg/rational.hpp"

using acmg::Rational;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(7, 2).str() == "7/2");
  CHECK(Rational(4).str() == "4");
}

TEST_CASE("rational guards") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  // 2^62 * 4 overflows int64
  Rational big(std::int64_t(1) << 62);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
}

TEST_CASE("exact conversion from binary doubles") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
  CHECK(Rational::from_double(3.0) == Rational(3));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);  // exact dyadic of the stored double
}
