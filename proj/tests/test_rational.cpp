#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "schlicht/rational.hpp"

using schlicht::BigRational;

TEST_CASE("construction reduces to lowest terms") {
  CHECK(BigRational(2, 4) == BigRational(1, 2));
  CHECK(BigRational(-6, 9) == BigRational(-2, 3));
  CHECK(BigRational(6, -9) == BigRational(-2, 3));  // sign moves to numerator
  CHECK(BigRational(-6, -9) == BigRational(2, 3));
  CHECK(BigRational(0, 7) == BigRational(0));
  CHECK(BigRational(0, 7).denominator() == 1);
  CHECK(BigRational(5, 1).is_integer());
  CHECK_FALSE(BigRational(5, 3).is_integer());
}

TEST_CASE("zero denominator is rejected") {
  CHECK_THROWS_AS(BigRational(1, 0), std::domain_error);
  CHECK_THROWS_AS(BigRational(0, 0), std::domain_error);
  CHECK_THROWS_AS(BigRational(mpz_class(3), mpz_class(0)), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  BigRational a(1, 3), b(1, 6);
  CHECK(a + b == BigRational(1, 2));
  CHECK(a - b == BigRational(1, 6));
  CHECK(a * b == BigRational(1, 18));
  CHECK(a / b == BigRational(2));
  CHECK(-a == BigRational(-1, 3));
  CHECK(a.reciprocal() == BigRational(3));

  // accumulation that would drift in floating point
  BigRational s;
  for (int i = 0; i < 10; ++i) s += BigRational(1, 10);
  CHECK(s == BigRational(1));
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), std::domain_error);
  CHECK_THROWS_AS(BigRational(0).reciprocal(), std::domain_error);
}

TEST_CASE("comparisons") {
  CHECK(BigRational(1, 3) < BigRational(1, 2));
  CHECK(BigRational(-1, 2) < BigRational(-1, 3));
  CHECK(BigRational(2, 4) <= BigRational(1, 2));
  CHECK(BigRational(2, 4) >= BigRational(1, 2));
  CHECK(BigRational(7, 5) > BigRational(4, 3));
  CHECK(BigRational(1, 3) != BigRational(1, 4));
  CHECK(BigRational(3, 2).sign() == 1);
  CHECK(BigRational(-3, 2).sign() == -1);
  CHECK(BigRational(0).sign() == 0);
}

TEST_CASE("parser accepts canonical forms") {
  CHECK(BigRational::from_string("0") == BigRational(0));
  CHECK(BigRational::from_string("-7") == BigRational(-7));
  CHECK(BigRational::from_string("22/7") == BigRational(22, 7));
  CHECK(BigRational::from_string("-2/4") == BigRational(-1, 2));
  CHECK(BigRational::from_string("0/5") == BigRational(0));
  // big numbers round-trip
  const char* big = "123456789012345678901234567891/7";
  CHECK(BigRational::from_string(big).str() == big);
}

TEST_CASE("parser rejects everything else") {
  for (const char* bad :
       {"", " ", "1.5", "1e3", "+2", "+2/4", "1/-2", "-1/-2", "2/", "/3",
        "1/0", "3/0", " 1/2", "1/2 ", "1 /2", "0x10", "--3", "2//3", "a"}) {
    INFO("input: '" << bad << "'");
    CHECK_THROWS_AS(BigRational::from_string(bad), std::invalid_argument);
  }
}

TEST_CASE("str round-trips") {
  for (const char* s : {"0", "1", "-1", "1/2", "-355/113", "101/100"}) {
    CHECK(BigRational::from_string(s).str() == s);
  }
  CHECK(BigRational(4, 2).str() == "2");  // integers print without /1
}

TEST_CASE("from_double is exact binary-to-rational") {
  CHECK(BigRational::from_double(0.5) == BigRational(1, 2));
  CHECK(BigRational::from_double(0.25) == BigRational(1, 4));
  CHECK(BigRational::from_double(-3.0) == BigRational(-3));
  // 0.1 is not 1/10 in binary; conversion must reflect the actual bits
  CHECK(BigRational::from_double(0.1) ==
        BigRational(mpz_class("3602879701896397"),
                    mpz_class("36028797018963968")));
  CHECK_THROWS_AS(BigRational::from_double(1.0 / 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BigRational::from_double(0.0 / 0.0), std::invalid_argument);
}

TEST_CASE("abs") {
  CHECK(schlicht::abs(BigRational(-3, 7)) == BigRational(3, 7));
  CHECK(schlicht::abs(BigRational(3, 7)) == BigRational(3, 7));
  CHECK(schlicht::abs(BigRational(0)) == BigRational(0));
}
