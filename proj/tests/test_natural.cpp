#include <doctest.h>

#include "ppa/natural.hpp"
#include "reference.hpp"

using ppa::Natural;

TEST_CASE("ceil_ln small values") {
  CHECK(ppa::ceil_ln(1) == 0);
  CHECK(ppa::ceil_ln(2) == 1);
  CHECK(ppa::ceil_ln(3) == 2);
  CHECK(ppa::ceil_ln(4) == 2);
  CHECK(ppa::ceil_ln(7) == 2);
  CHECK(ppa::ceil_ln(8) == 3);
  CHECK(ppa::ceil_ln(20) == 3);
  CHECK(ppa::ceil_ln(21) == 4);
  CHECK_THROWS_AS(ppa::ceil_ln(0), std::domain_error);
}

TEST_CASE("ceil_ln at the integer neighbours of e^m") {
  // floor(e^m) needs m, floor(e^m) + 1 needs m + 1
  for (int m = 1; m <= 60; ++m) {
    using F = boost::multiprecision::cpp_bin_float_100;
    const Natural lo = static_cast<Natural>(boost::multiprecision::floor(boost::multiprecision::exp(F(m))));
    CAPTURE(m);
    CHECK(ppa::ceil_ln(lo) == m);
    CHECK(ppa::ceil_ln(lo + 1) == m + 1);
  }
}

TEST_CASE("ceil_ln of huge numbers") {
  const Natural big = Natural(1) << 5000;
  CHECK(ppa::ceil_ln(big) == ref::ceil_ln(big));
}

TEST_CASE("ceil_scaled_exp") {
  CHECK(ppa::ceil_scaled_exp(4, 0, 64) == 4);
  CHECK(ppa::ceil_scaled_exp(4, 1, 64) == 11);
  CHECK(ppa::ceil_scaled_exp(4, 2, 64) == 30);
  CHECK(ppa::ceil_scaled_exp(1, 10, 64) == 22027);
  CHECK_THROWS_AS(ppa::ceil_scaled_exp(1, 1000, 64), std::overflow_error);
}

TEST_CASE("parse and print naturals") {
  CHECK(ppa::parse_natural("0") == 0);
  CHECK(ppa::to_string(ppa::parse_natural("123456789012345678901234567890")) ==
        "123456789012345678901234567890");
  CHECK_THROWS_AS(ppa::parse_natural("-1"), std::invalid_argument);
  CHECK_THROWS_AS(ppa::parse_natural("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(ppa::parse_natural(""), std::invalid_argument);
  CHECK(ppa::bit_length(0) == 0);
  CHECK(ppa::bit_length(255) == 8);
  CHECK(ppa::to_u64(Natural(1) << 64) == std::nullopt);
  CHECK(ppa::to_u64(42) == 42u);
}
