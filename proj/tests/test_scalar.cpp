#include "doctest.h"
#include "grla/scalar.hpp"

#include <random>

using namespace grla;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0).den() == 1);
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(7, 3).inv() == Rational(3, 7));
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
  CHECK_THROWS_AS(Rational(0).inv(), DivisionByZero);
  CHECK(Rational(-3, 2) < Rational(1));
  CHECK(Rational(5, 3).str() == "5/3");
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK_THROWS_AS(Rational::parse("1/0"), BadScalar);
}

TEST_CASE("cyclo_normalize canonical residues") {
  // zeta_2 -> -1 as a plain rational
  Scalar z2 = Scalar::root_of_unity(2);
  CHECK(z2.is_rational());
  CHECK(z2.rat() == Rational(-1));

  // zeta_4^2 -> -1
  Scalar z4 = Scalar::root_of_unity(4);
  Scalar sq = z4 * z4;
  CHECK(sq.is_rational());
  CHECK(sq.rat() == Rational(-1));

  // zeta_3^2 -> -1 - zeta_3
  Scalar z3 = Scalar::root_of_unity(3);
  Scalar z3sq = z3 * z3;
  CHECK(z3sq == Scalar(3, {Rational(-1), Rational(-1)}));
}

TEST_CASE("cyclotomic inversion") {
  CHECK(Scalar(Rational(1, 2)).inv() == Scalar(2));
  Scalar z4 = Scalar::root_of_unity(4);
  CHECK(z4.inv() == -z4);
  Scalar z3 = Scalar::root_of_unity(3);
  CHECK((Scalar(1) + z3).inv() == -z3);
  CHECK_THROWS_AS(Scalar(0).inv(), DivisionByZero);
}

TEST_CASE("field laws on sampled values") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), ord(0, 5);
  auto sample = [&] {
    static const int orders[] = {1, 2, 3, 4, 6, 12};  // pairwise lcm <= 12
    int m = orders[ord(rng)];
    std::vector<Rational> poly;
    for (int i = 0; i < euler_phi(m); ++i) poly.emplace_back(num(rng), den(rng));
    return Scalar(m, poly);
  };
  for (int trial = 0; trial < 200; ++trial) {
    Scalar a = sample(), b = sample(), c = sample();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inv() == Scalar(1));
  }
}

TEST_CASE("embedding consistency across orders") {
  for (int m : {1, 2, 3, 4, 6, 8, 12}) {
    std::vector<Rational> poly(static_cast<size_t>(euler_phi(m)));
    poly[0] = Rational(5, 7);
    Scalar embedded(m, poly);
    CHECK(embedded == Scalar(Rational(5, 7)));
  }
  CHECK_THROWS_AS(Scalar::root_of_unity(13), UnsupportedOrder);
}

TEST_CASE("scalar parsing and printing") {
  CHECK(Scalar::parse("3/4") == Scalar(Rational(3, 4)));
  CHECK(Scalar::parse("1/2 + 1/2*z", 4) == Scalar(4, {Rational(1, 2), Rational(1, 2)}));
  CHECK(Scalar::parse("-z^2", 8) == Scalar(8, {Rational(0), Rational(0), Rational(-1)}));
  CHECK(Scalar::parse("z", 2) == Scalar(-1));
  CHECK(Scalar::parse("2 - 3*z", 3).str() == "2 + -3*z");
  CHECK_THROWS_AS(Scalar::parse("z"), BadScalar);
  CHECK_THROWS_AS(Scalar::parse("1/0"), BadScalar);
}
