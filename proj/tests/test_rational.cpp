#include <catch2/catch_amalgamated.hpp>

#include "mclain/rational.hpp"

using mclain::Rat;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, 4) == Rat(-1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(6, 3) == Rat(2));
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("field arithmetic") {
  Rat a(3, 4), b(5, 6);
  CHECK(a + b == Rat(19, 12));
  CHECK(a - b == Rat(-1, 12));
  CHECK(a * b == Rat(5, 8));
  CHECK(a / b == Rat(9, 10));
  CHECK(-a == Rat(-3, 4));
  CHECK_THROWS(a / Rat(0));

  Rat c(1, 3);
  c += Rat(1, 6);
  CHECK(c == Rat(1, 2));
  c *= Rat(4);
  CHECK(c == Rat(2));
}

TEST_CASE("comparison is exact") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(rat_cmp(Rat(2, 6), Rat(1, 3)) == 0);
  CHECK(rat_cmp(Rat(7, 2), Rat(3)) > 0);
}

TEST_CASE("predicates and accessors") {
  CHECK(Rat(4, 2).is_integer());
  CHECK_FALSE(Rat(1, 2).is_integer());
  CHECK(Rat(0).is_zero());
  CHECK(Rat(5, 3).num() == 5);
  CHECK(Rat(5, 3).den() == 3);
}

TEST_CASE("string form") {
  CHECK(Rat(3).str() == "3");
  CHECK(Rat(-1, 2).str() == "-1/2");
  CHECK(Rat(0).str() == "0");
}

TEST_CASE("large intermediate values survive via 128-bit products") {
  Rat big(1'000'000'007, 3);
  Rat other(999'999'937, 5);
  Rat p = big * other;
  CHECK(p == Rat(1'000'000'007LL * 999'999'937LL, 15));
  CHECK(p / other == big);
}
