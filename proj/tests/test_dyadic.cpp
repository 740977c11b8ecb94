#include <doctest.h>

#include <cmath>
#include <random>

#include "chshsim/dyadic.hpp"

using chshsim::BigInt;
using chshsim::Dyadic;

TEST_CASE("dyadic reduction and printing") {
  CHECK(Dyadic(2, 4).to_fraction_string() == "1/8");
  CHECK(Dyadic(10, 4).to_fraction_string() == "5/8");
  CHECK(Dyadic(16, 4).to_fraction_string() == "1");
  CHECK(Dyadic(0, 12).to_fraction_string() == "0");
  CHECK(Dyadic(-6, 3).to_fraction_string() == "-3/4");
  CHECK(Dyadic(2, 4).reduced().exponent() == 3);
}

TEST_CASE("dyadic comparison ignores representation") {
  CHECK(Dyadic(2, 4) == Dyadic(1, 3));
  CHECK(Dyadic(1, 3) < Dyadic(3, 4));
  CHECK(Dyadic(0, 0) == Dyadic(0, 9));
  CHECK(Dyadic(1, 3).with_exponent(8) == Dyadic(32, 8));
  CHECK_THROWS_AS(Dyadic(1, 3).with_exponent(2), std::invalid_argument);
}

TEST_CASE("dyadic arithmetic matches double on small values") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-1000, 1000);
  std::uniform_int_distribution<unsigned> ex(0, 20);
  for (int i = 0; i < 500; ++i) {
    const Dyadic a(num(rng), ex(rng));
    const Dyadic b(num(rng), ex(rng));
    CHECK((a + b).to_double() == a.to_double() + b.to_double());
    CHECK((a - b).to_double() == a.to_double() - b.to_double());
    CHECK((a * b).to_double() == a.to_double() * b.to_double());
    CHECK(((a < b) == (a.to_double() < b.to_double())));
  }
}

TEST_CASE("to_double survives numerators beyond double range") {
  // (2^4000 + 1) / 2^4003 ~ 1/8
  const Dyadic big((BigInt(1) << 4000) + 1, 4003);
  CHECK(big.to_double() == doctest::Approx(0.125).epsilon(1e-15));
  const Dyadic tiny(3, 1100);
  CHECK(tiny.to_double() == std::ldexp(3.0, -1100));
}
