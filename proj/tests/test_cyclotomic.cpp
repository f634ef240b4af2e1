#include <catch2/catch_amalgamated.hpp>

#include "mclain/cyclotomic.hpp"

using mclain::Cyc;
using mclain::Rat;

TEST_CASE("roots of unity multiply by exponent addition") {
  for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u}) {
    Cyc z = Cyc::root(1, n);
    Cyc acc = Cyc(1);
    for (std::uint32_t k = 1; k <= n; ++k) {
      acc *= z;
      CHECK(acc == Cyc::root(k, n));
    }
    CHECK(acc == Cyc(1));  // z^n = 1
  }
}

TEST_CASE("sum over all n-th roots vanishes") {
  for (std::uint32_t n : {2u, 3u, 4u, 6u, 7u, 8u, 9u, 12u}) {
    Cyc s = Cyc(0);
    for (std::uint32_t k = 0; k < n; ++k) s += Cyc::root(k, n);
    CHECK(s.is_zero());
  }
}

TEST_CASE("fourth root is a square root of -1") {
  Cyc i = Cyc::root(1, 4);
  CHECK(i * i == Cyc(-1));
  CHECK_FALSE(i.is_rational());
  CHECK(i.level() == 4);
}

TEST_CASE("quadratic Gauss sum at level 3") {
  // (2*z3 + 1)^2 = -3
  Cyc g = Rat(2) * Cyc::root(1, 3) + Cyc(1);
  CHECK(g * g == Cyc(-3));
}

TEST_CASE("level lifting preserves value") {
  Cyc z6 = Cyc::root(1, 6);
  Cyc lifted = z6.at_level(12);
  CHECK(lifted.level() == 12);
  CHECK(lifted == z6);
  CHECK(lifted == Cyc::root(2, 12));
  CHECK_THROWS(z6.at_level(8));  // 6 does not divide 8
}

TEST_CASE("mixed-level arithmetic aligns automatically") {
  Cyc a = Cyc::root(1, 4);   // i
  Cyc b = Cyc::root(1, 3);
  Cyc s = a + b;
  CHECK(s.level() == 12);
  CHECK(s - b == a);
}

TEST_CASE("conjugation inverts roots") {
  for (std::uint32_t n : {3u, 4u, 5u, 8u}) {
    Cyc z = Cyc::root(1, n);
    CHECK(z.conjugate() == Cyc::root(n - 1, n));
    CHECK(z * z.conjugate() == Cyc(1));
  }
  CHECK(Cyc(Rat(7, 2)).conjugate() == Cyc(Rat(7, 2)));
}

TEST_CASE("rationality predicates") {
  // z8 + z8^-1 = sqrt(2), irrational but real
  Cyc r = Cyc::root(1, 8) + Cyc::root(7, 8);
  CHECK_FALSE(r.is_rational());
  CHECK(r * r == Cyc(2));

  Cyc one = Cyc::root(4, 4);
  CHECK(one.is_integer());
  CHECK(one.rational_part() == Rat(1));
  CHECK_THROWS(Cyc::root(1, 4).rational_part());
}

TEST_CASE("canonical compare is a total order on test values") {
  std::vector<Cyc> vals = {Cyc(-1), Cyc(0), Cyc(1), Cyc::root(1, 4), Cyc::root(3, 4)};
  for (const auto& x : vals)
    for (const auto& y : vals) {
      int c = cyc_cmp(x, y);
      CHECK(c == -cyc_cmp(y, x));
      CHECK((c == 0) == (x == y));
    }
}

TEST_CASE("totient and cyclotomic polynomial degree agree") {
  using mclain::detail::cyc_ctx;
  using mclain::detail::totient;
  for (std::uint32_t n : {1u, 2u, 3u, 4u, 6u, 8u, 9u, 12u, 15u})
    CHECK(cyc_ctx(n).deg == totient(n));
}
