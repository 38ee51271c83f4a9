#include "doctest.h"
#include "grla/grrs.hpp"

#include <set>

using namespace grla;

namespace {

QMat qdiag(std::vector<long long> d) {
  QMat m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = Rational(d[i]);
  return m;
}

// Embedding that maps Z^nu onto the last nu coordinates of Q^d.
QMat tail_embed(size_t d, size_t nu) {
  QMat e(d, nu);
  for (size_t j = 0; j < nu; ++j) e.at(d - nu + j, j) = Rational(1);
  return e;
}

QVec unit(size_t d, size_t i) {
  QVec v(d);
  v[i] = Rational(1);
  return v;
}

CosetUnion point0(size_t nu) {
  return CosetUnion::lattice(IntLattice(nu)).shifted(IntVec(nu));
}

CosetUnion semilattice3() {
  return CosetUnion(IntLattice::full(3).scaled(2), {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

// nu=3 example: R = (S+S) u (a1+S) u (-a1+S) u Lambda u (a2+Lambda) u (-a2+Lambda).
GrrsPresentation two_component_r() {
  CosetUnion s = semilattice3();
  CosetUnion lam = CosetUnion::lattice(IntLattice::full(3));
  QVec a1 = unit(5, 0), a2 = unit(5, 1);
  return GrrsPresentation(5, qdiag({2, 2, 0, 0, 0}), tail_embed(5, 3),
                          {{QVec(5), s.minkowski(s)},
                           {QVec(5), lam},
                           {a1, s},
                           {vec_scale(a1, Rational(-1)), s},
                           {a2, lam},
                           {vec_scale(a2, Rational(-1)), lam}});
}

// Closure of the first component: Lambda u (+-a1 + S); singular.
GrrsPresentation rprime1() {
  CosetUnion s = semilattice3();
  CosetUnion lam = CosetUnion::lattice(IntLattice::full(3));
  QVec a1 = unit(4, 0);
  return GrrsPresentation(4, qdiag({2, 0, 0, 0}), tail_embed(4, 3),
                          {{QVec(4), lam}, {a1, s}, {vec_scale(a1, Rational(-1)), s}});
}

GrrsPresentation affine_a1() {
  CosetUnion z = CosetUnion::lattice(IntLattice::full(1));
  QVec a = unit(2, 0);
  return GrrsPresentation(2, qdiag({2, 0}), tail_embed(2, 1),
                          {{QVec(2), z}, {a, z}, {vec_scale(a, Rational(-1)), z}});
}

GrrsPresentation bc1_pres() {
  CosetUnion z = CosetUnion::lattice(IntLattice::full(1));
  CosetUnion two = CosetUnion::lattice(IntLattice::full(1).scaled(2));
  QVec a = unit(2, 0);
  return GrrsPresentation(2, qdiag({2, 0}), tail_embed(2, 1),
                          {{QVec(2), z},
                           {a, z},
                           {vec_scale(a, Rational(-1)), z},
                           {vec_scale(a, Rational(2)), two},
                           {vec_scale(a, Rational(-2)), two}});
}

GrrsPresentation finite_a1() {
  QVec a = unit(1, 0);
  return GrrsPresentation(1, qdiag({2}), QMat(1, 0),
                          {{QVec(1), point0(0)}, {a, point0(0)}, {vec_scale(a, Rational(-1)), point0(0)}});
}

GrrsPresentation two_a1() {
  QVec a = unit(2, 0), b = unit(2, 1);
  return GrrsPresentation(2, qdiag({2, 2}), QMat(2, 0),
                          {{QVec(2), point0(0)},
                           {a, point0(0)},
                           {vec_scale(a, Rational(-1)), point0(0)},
                           {b, point0(0)},
                           {vec_scale(b, Rational(-1)), point0(0)}});
}

QVec qv(std::vector<long long> e) {
  QVec v(e.size());
  for (size_t i = 0; i < e.size(); ++i) v[i] = Rational(e[i]);
  return v;
}

}  // namespace

TEST_CASE("membership") {
  GrrsPresentation r = two_component_r();
  CHECK(grrs_member(qv({1, 0, 1, 0, 0}), r));   // a1 + s1
  CHECK(!grrs_member(qv({1, 0, 1, 1, 0}), r));  // a1 + s1 + s2
  CHECK(grrs_member(qv({0, 0, 0, 0, 0}), r));
  CHECK(grrs_member(qv({0, 0, 1, 1, 1}), r));   // in Lambda from R_2
  CHECK(!grrs_member(qv({1, 1, 0, 0, 0}), r));  // a1 + a2
}

TEST_CASE("form, cartan, reflect") {
  GrrsPresentation r = two_component_r();
  QVec a1 = qv({1, 0, 0, 0, 0}), s1 = qv({0, 0, 1, 0, 0});
  CHECK(grrs_form(a1, a1, r) == Rational(2));
  CHECK(cartan_int(a1, a1, r) == 2);
  CHECK(cartan_int(s1, a1, r) == 0);
  CHECK_THROWS_AS(cartan_int(a1, s1, r), IsotropicDenominator);
  CHECK(reflect(vec_add(a1, s1), a1, r) == vec_add(vec_scale(a1, Rational(-1)), s1));
  CHECK(reflect(s1, a1, r) == s1);
  CHECK(reflect(a1, a1, r) == vec_scale(a1, Rational(-1)));
}

TEST_CASE("root strings") {
  GrrsPresentation r = two_component_r();
  QVec a1 = qv({1, 0, 0, 0, 0}), s1 = qv({0, 0, 1, 0, 0});
  CHECK(root_string(s1, a1, r) == std::pair<int, int>{1, 1});

  GrrsPresentation fin = finite_a1();
  QVec a = qv({1});
  CHECK(root_string(a, a, fin) == std::pair<int, int>{2, 0});

  GrrsPresentation rp = rprime1();
  QVec iso111 = qv({0, 1, 1, 1});
  QVec a1p = qv({1, 0, 0, 0});
  CHECK(root_string(iso111, a1p, rp) == std::pair<int, int>{0, 0});
}

TEST_CASE("axiom reports") {
  GrrsReport rep = check_axioms(two_component_r(), 2);
  for (int i = 0; i < 6; ++i) CHECK(rep.axiom[static_cast<size_t>(i)].pass);
  CHECK(!rep.axiom[6].pass);

  GrrsReport rp = check_axioms(rprime1(), 2);
  CHECK(rp.all_of(5));
  CHECK(!rp.axiom[5].pass);
  CHECK(rp.axiom[6].pass);

  GrrsReport fin = check_axioms(finite_a1(), 2);
  CHECK(fin.all_of(7));

  GrrsReport aff = check_axioms(affine_a1(), 3);
  CHECK(aff.all_of(7));
}

TEST_CASE("isolated roots") {
  CHECK(isolated_roots(two_component_r()).is_empty());

  CosetUnion iso = isolated_roots(rprime1());
  CHECK(iso.residues().size() == 1);
  CHECK(iso.member({1, 1, 1}));
  CHECK(!iso.member({1, 1, 0}));
  CHECK(iso.modulus() == IntLattice::full(3).scaled(2));

  CHECK(isolated_roots(finite_a1()).is_empty());
  CHECK(isolated_roots(two_a1()).is_empty());
}

TEST_CASE("isolated roots match brute force on windows") {
  for (const GrrsPresentation& g : {two_component_r(), rprime1(), affine_a1(), bc1_pres()}) {
    size_t nu = g.null_rank();
    CosetUnion iso = isolated_roots(g);
    IntVec lo(nu, -2), hi(nu, 2), wlo(nu, -4), whi(nu, 4);
    std::vector<QVec> noniso;
    for (size_t f : g.nonisotropic())
      for (const auto& lam : g.families()[f].support.enumerate_window(wlo, whi))
        noniso.push_back(vec_add(g.families()[f].base, g.embedded(lam)));
    for (const auto& delta : g.isotropic_support().enumerate_window(lo, hi)) {
      bool brute = true;
      QVec dv = g.embedded(delta);
      for (const auto& a : noniso)
        if (grrs_member(vec_add(dv, a), g)) {
          brute = false;
          break;
        }
      CHECK(iso.member(delta) == brute);
    }
  }
}

TEST_CASE("decompose") {
  DecompositionResult dec = decompose(two_component_r(), 1);
  REQUIRE(dec.components.size() == 2);
  CHECK(dec.components[0].type == FinType{FinFamily::A, 1});
  CHECK(dec.components[1].type == FinType{FinFamily::A, 1});
  CHECK(dec.nullity == 3);
  CHECK(dec.r_iso.is_empty());
  CHECK(dec.r0_0.is_empty());
  CHECK(dec.components[0].c == Rational(1));
  // Components ordered by least base: -a1 before -a2.
  CHECK(dec.components[0].r.families()[1].base[0] == Rational(-1));
  // R_1 isotropic part is S+S (7 classes); closure has the full lattice.
  CHECK(dec.components[0].r.isotropic_support().residues().size() == 7);
  CHECK(dec.components[0].r_prime.isotropic_support() ==
        CosetUnion::lattice(IntLattice::full(3)));
  CHECK(dec.components[1].r.isotropic_support() == CosetUnion::lattice(IntLattice::full(3)));

  DecompositionResult two = decompose(two_a1(), 1);
  CHECK(two.components.size() == 2);
  CHECK(two.nullity == 0);

  DecompositionResult aff = decompose(affine_a1(), 2);
  CHECK(aff.components.size() == 1);
  CHECK(aff.nullity == 1);
}

TEST_CASE("quotient classification") {
  QuotientResult q1 = quotient(two_component_r());
  REQUIRE(q1.components.size() == 2);
  CHECK(q1.components[0].first == FinType{FinFamily::A, 1});
  CHECK(q1.components[1].first == FinType{FinFamily::A, 1});

  CHECK(quotient(affine_a1()).components[0].first == FinType{FinFamily::A, 1});
  CHECK(quotient(bc1_pres()).components[0].first == FinType{FinFamily::BC, 1});
}

TEST_CASE("nullity") {
  CHECK(nullity(two_component_r()) == 3);
  CHECK(nullity(finite_a1()) == 0);
  CHECK(nullity(affine_a1()) == 1);
}

TEST_CASE("composite form") {
  // Two orthogonal components with an indefinite but componentwise-definite form.
  QVec a = unit(3, 0), b = unit(3, 1);
  GrrsPresentation g(3, qdiag({-2, 2, 0}), tail_embed(3, 1),
                     {{QVec(3), CosetUnion::lattice(IntLattice::full(1))},
                      {a, point0(1)},
                      {vec_scale(a, Rational(-1)), point0(1)},
                      {b, point0(1)},
                      {vec_scale(b, Rational(-1)), point0(1)}});
  auto [gram_p, cs] = composite_form(g);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == Rational(-1));
  CHECK(cs[1] == Rational(1));
  CHECK(gram_p == qdiag({2, 2, 0}));

  auto [gp2, cs2] = composite_form(affine_a1());
  CHECK(cs2 == std::vector<Rational>{Rational(1)});
  CHECK(gp2 == qdiag({2, 0}));

  // Mixed signs inside one component cannot be fixed by rescaling.
  QMat bad(2, 2);
  bad.at(0, 0) = Rational(2);
  bad.at(1, 1) = Rational(-2);
  bad.at(0, 1) = bad.at(1, 0) = Rational(1);
  GrrsPresentation gb(2, bad, QMat(2, 0),
                      {{QVec(2), point0(0)},
                       {unit(2, 0), point0(0)},
                       {vec_scale(unit(2, 0), Rational(-1)), point0(0)},
                       {unit(2, 1), point0(0)},
                       {vec_scale(unit(2, 1), Rational(-1)), point0(0)}});
  CHECK_THROWS_AS(composite_form(gb), IndefiniteComponent);
}

TEST_CASE("window enumeration and null projection") {
  GrrsPresentation aff = affine_a1();
  auto pts = grrs_enumerate_window(aff, {-1}, {1});
  CHECK(pts.size() == 9);
  std::set<QVec> set(pts.begin(), pts.end());
  CHECK(set.count(qv({0, 0})));
  CHECK(set.count(qv({1, 1})));
  CHECK(set.count(qv({-1, -1})));
  CHECK(!set.count(qv({2, 0})));

  GrrsPresentation r = two_component_r();
  CHECK(project_null(qv({1, 0, 1, 0, 0}), r) == qv({0, 0, 1, 0, 0}));
  CHECK(project_null(qv({1, 0, 0, 0, 0}), r) == QVec(5));
}

TEST_CASE("windowed invariants") {
  for (const GrrsPresentation& g : {two_component_r(), affine_a1(), bc1_pres()}) {
    size_t nu = g.null_rank();
    IntVec lo(nu, -1), hi(nu, 1);
    auto roots = grrs_enumerate_window(g, lo, hi);
    for (const auto& a : roots) {
      Rational aa = grrs_form(a, a, g);
      for (const auto& b : roots) {
        // Orthogonality of roots against isotropic roots.
        if (grrs_form(b, b, g).is_zero()) CHECK(grrs_form(a, b, g).is_zero());
        if (!aa.is_zero()) CHECK(grrs_member(reflect(b, a, g), g));
      }
      if (!aa.is_zero()) CHECK(!grrs_member(vec_scale(a, Rational(3)), g));
    }
  }
}

TEST_CASE("presentation validation") {
  // Embedding outside the radical is rejected.
  CHECK_THROWS_AS(GrrsPresentation(2, qdiag({2, 1}), tail_embed(2, 1), {}), BadPresentation);
  // Zero root required.
  CHECK_THROWS_AS(GrrsPresentation(1, qdiag({2}), QMat(1, 0),
                                   {{unit(1, 0), point0(0)}}),
                  BadPresentation);
}
