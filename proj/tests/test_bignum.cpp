#include "doctest.h"
#include "regseed/bignum.hpp"
#include "regseed/errors.hpp"

using namespace regseed;

TEST_CASE("parse_rational_forms") {
  CHECK(parse_rational("3/5") == BigRat(3, 5));
  CHECK(parse_rational("12") == BigRat(12));
  CHECK(parse_rational("-7/2") == BigRat(-7, 2));
  CHECK(parse_rational("0.25") == BigRat(1, 4));
  CHECK(parse_rational("-0.5") == BigRat(-1, 2));
  CHECK(parse_rational(".5") == BigRat(1, 2));
  CHECK(parse_rational("2/4") == BigRat(1, 2));
}

TEST_CASE("parse_rational_rejects") {
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("1e-3"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1."), ValidationError);
}

TEST_CASE("floor_ceil") {
  CHECK(floor_rat(BigRat(7, 2)) == 3);
  CHECK(ceil_rat(BigRat(7, 2)) == 4);
  CHECK(floor_rat(BigRat(-7, 2)) == -4);
  CHECK(ceil_rat(BigRat(-7, 2)) == -3);
  CHECK(floor_rat(BigRat(6)) == 6);
  CHECK(ceil_rat(BigRat(6)) == 6);
  CHECK(ceil_rat(BigRat(0)) == 0);
}

TEST_CASE("bit_length_values") {
  CHECK(bit_length(BigInt(0)) == 0);
  CHECK(bit_length(BigInt(1)) == 1);
  CHECK(bit_length(BigInt(255)) == 8);
  CHECK(bit_length(BigInt(256)) == 9);
  CHECK(bit_length(BigInt(-256)) == 9);
}

TEST_CASE("floor_log2_boundaries") {
  CHECK(floor_log2(BigRat(1)) == 0);
  CHECK(floor_log2(BigRat(2)) == 1);
  CHECK(floor_log2(BigRat(3)) == 1);
  CHECK(floor_log2(BigRat(8)) == 3);
  CHECK(floor_log2(BigRat(1, 2)) == -1);
  CHECK(floor_log2(BigRat(1, 3)) == -2);
  CHECK(floor_log2(BigRat(1, 8)) == -3);
  CHECK(floor_log2(BigRat(7, 8)) == -1);
  CHECK(floor_log2(BigRat(5, 4)) == 0);
  CHECK_THROWS_AS(floor_log2(BigRat(0)), ValidationError);
}

TEST_CASE("sqrt_interval_encloses") {
  BigRat lo, hi;
  sqrt_interval(BigRat(2), 64, lo, hi);
  CHECK(lo * lo <= 2);
  CHECK(hi * hi >= 2);
  CHECK(hi - lo <= BigRat(1, BigInt(1) << 62));

  sqrt_interval(BigRat(9, 4), 16, lo, hi);
  CHECK(lo == BigRat(3, 2));
  CHECK(hi == BigRat(3, 2));

  sqrt_interval(BigRat(0), 16, lo, hi);
  CHECK(lo == 0);
  CHECK(hi == 0);
}

TEST_CASE("exact_sqrt_detects_squares") {
  BigRat root;
  CHECK(exact_sqrt(BigRat(9, 4), root));
  CHECK(root == BigRat(3, 2));
  CHECK(exact_sqrt(BigRat(1, 400), root));
  CHECK(root == BigRat(1, 20));
  CHECK_FALSE(exact_sqrt(BigRat(2), root));
  CHECK_FALSE(exact_sqrt(BigRat(-4), root));
}

TEST_CASE("rational_decimal_rendering") {
  CHECK(rational_decimal(BigRat(1, 4), 3) == "0.250");
  CHECK(rational_decimal(BigRat(-1, 3), 4) == "-0.3333");
  CHECK(rational_decimal(BigRat(5), 2) == "5.00");
  CHECK(rational_decimal(BigRat(1234, 10), 1) == "123.4");
}
