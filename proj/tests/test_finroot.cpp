#include "doctest.h"
#include "grla/finroot.hpp"

#include <set>

using namespace grla;

namespace {

QMat qmat(size_t n, std::vector<long long> e) {
  QMat m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m.at(i, j) = Rational(e[i * n + j]);
  return m;
}

}  // namespace

TEST_CASE("standard constructions") {
  FinRootSystem a1 = build_finroot(FinFamily::A, 1);
  CHECK(a1.roots.size() == 2);
  CHECK(form_value(a1.gram, a1.roots[0], a1.roots[0]) == Rational(2));

  CHECK(build_finroot(FinFamily::BC, 1).roots.size() == 4);

  FinRootSystem a2 = build_finroot(FinFamily::A, 2);
  CHECK(a2.roots.size() == 6);
  QVec e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)};
  CHECK(form_value(a2.gram, e1, e1) == Rational(2));
  CHECK(form_value(a2.gram, e1, e2) == Rational(-1));

  CHECK_THROWS_AS(build_finroot(FinFamily::F, 3), InvalidType);
  CHECK_THROWS_AS(build_finroot(FinFamily::D, 3), InvalidType);
  CHECK_THROWS_AS(build_finroot(FinFamily::A, 9), InvalidType);
}

TEST_CASE("root counts") {
  auto count = [](FinFamily f, int r) { return build_finroot(f, r).roots.size(); };
  CHECK(count(FinFamily::A, 3) == 12);
  CHECK(count(FinFamily::B, 3) == 18);
  CHECK(count(FinFamily::C, 3) == 18);
  CHECK(count(FinFamily::D, 4) == 24);
  CHECK(count(FinFamily::G, 2) == 12);
  CHECK(count(FinFamily::F, 4) == 48);
  CHECK(count(FinFamily::E, 6) == 72);
  CHECK(count(FinFamily::E, 7) == 126);
  CHECK(count(FinFamily::E, 8) == 240);
  CHECK(count(FinFamily::BC, 2) == 12);
  CHECK(count(FinFamily::BC, 3) == 24);
}

TEST_CASE("classification round trips") {
  std::vector<FinType> pairs;
  for (int r = 1; r <= 6; ++r) pairs.push_back({FinFamily::A, r});
  for (int r = 2; r <= 6; ++r) pairs.push_back({FinFamily::B, r});
  for (int r = 3; r <= 6; ++r) pairs.push_back({FinFamily::C, r});
  for (int r = 4; r <= 6; ++r) pairs.push_back({FinFamily::D, r});
  for (int r = 1; r <= 6; ++r) pairs.push_back({FinFamily::BC, r});
  pairs.push_back({FinFamily::E, 6});
  pairs.push_back({FinFamily::F, 4});
  pairs.push_back({FinFamily::G, 2});
  for (auto [f, r] : pairs) {
    FinRootSystem sys = build_finroot(f, r);
    CHECK(classify_finroot(sys.roots, sys.gram) == FinType{f, r});
  }
}

TEST_CASE("indivisible roots") {
  FinRootSystem a1 = build_finroot(FinFamily::A, 1);
  CHECK(indivisible(a1).size() == 2);

  FinRootSystem bc1 = build_finroot(FinFamily::BC, 1);
  auto ind = indivisible(bc1);
  REQUIRE(ind.size() == 2);
  CHECK(form_value(bc1.gram, ind[0], ind[0]) == Rational(2));

  FinRootSystem b2 = build_finroot(FinFamily::B, 2);
  CHECK(indivisible(b2).size() == 8);
}

TEST_CASE("reflections") {
  FinRootSystem a2 = build_finroot(FinFamily::A, 2);
  QVec a{Rational(1), Rational(0)}, b{Rational(0), Rational(1)};
  CHECK(reflect_fin(a, a, a2.gram) == vec_scale(a, Rational(-1)));
  CHECK(reflect_fin(b, a, a2.gram) == vec_add(a, b));
  QMat diag = qmat(2, {2, 0, 0, 2});
  QVec c{Rational(1), Rational(0)}, d{Rational(0), Rational(1)};
  CHECK(reflect_fin(d, c, diag) == d);
}

TEST_CASE("reflection closure and Cartan bound") {
  for (auto [f, r] : {FinType{FinFamily::B, 3}, FinType{FinFamily::G, 2},
                      FinType{FinFamily::BC, 2}, FinType{FinFamily::F, 4}}) {
    FinRootSystem sys = build_finroot(f, r);
    std::set<QVec> all(sys.roots.begin(), sys.roots.end());
    for (const auto& a : sys.roots)
      for (const auto& b : sys.roots) {
        CHECK(all.count(reflect_fin(b, a, sys.gram)) == 1);
        Rational c = Rational(2) * form_value(sys.gram, b, a) /
                     form_value(sys.gram, a, a);
        CHECK(c.den() == 1);
        CHECK(Rational(-4) <= c);
        CHECK(c <= Rational(4));
      }
  }
}

TEST_CASE("classification rejects bad inputs") {
  QMat g1 = qmat(1, {2});
  QVec a{Rational(1)};
  // 3a breaks Cartan integrality bounds.
  CHECK_THROWS_AS(
      classify_finroot({a, vec_scale(a, Rational(-1)), vec_scale(a, Rational(3)),
                        vec_scale(a, Rational(-3))},
                       g1),
      NotARootSystem);
  // Missing reflection image a+b.
  QMat a2 = qmat(2, {2, -1, -1, 2});
  QVec e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)};
  CHECK_THROWS_AS(classify_finroot({e1, vec_scale(e1, Rational(-1)), e2,
                                    vec_scale(e2, Rational(-1))},
                                   a2),
                  NotARootSystem);
  // Orthogonal copies are not irreducible.
  QMat diag = qmat(2, {2, 0, 0, 2});
  CHECK_THROWS_AS(classify_finroot({e1, vec_scale(e1, Rational(-1)), e2,
                                    vec_scale(e2, Rational(-1))},
                                   diag),
                  NotARootSystem);
  // Missing negation.
  CHECK_THROWS_AS(classify_finroot({a}, g1), NotARootSystem);
}
