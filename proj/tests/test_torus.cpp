#include "doctest.h"
#include "grla/torus.hpp"
#include "test_algebras.hpp"

using namespace grla;
using namespace grla::testing;

namespace {

AffAlgebra aff_sl2() { return make_affine(sl2()); }

SVec unit(size_t dim, size_t i) {
  SVec v(dim);
  v[i] = Scalar(1);
  return v;
}

}  // namespace

TEST_CASE("grading extraction") {
  AffAlgebra a = aff_sl2();
  ToriGrading t = grading_extraction(aff_root_system(a));
  REQUIRE(t.dot_system.type_label.has_value());
  CHECK(*t.dot_system.type_label == FinType{FinFamily::A, 1});
  CHECK(t.lambda_t == IntLattice::full(1));
  CHECK(t.lambda_0.rank() == 0);
  CHECK(t.lambda == IntLattice::full(1));
  CHECK(t.type_label() == "(A1, 1)");

  // A decomposable presentation is rejected.
  CHECK_THROWS_AS(grading_extraction(aff_root_system(make_affine(sl2_sl2()))), NotIndecomposable);

  // Degenerate nullity-zero case: both lattices vanish.
  StructLieAlgebra fin = sl2();
  RootDecomposition rd = root_decomposition(fin);
  ToriGrading t0 = grading_extraction(induced_presentation(fin, rd).first);
  CHECK(t0.lambda_t.rank() == 0);
  CHECK(t0.type_label() == "(A1, 0)");
}

TEST_CASE("grading extraction of a singular system") {
  // Closure of one component of the rank-3 example: an A1 family over a
  // semilattice, whose isotropic part contains an isolated coset.
  CosetUnion s(IntLattice::full(3).scaled(2),
               {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CosetUnion lam = CosetUnion::lattice(IntLattice::full(3));
  QMat gram(4, 4);
  gram.at(0, 0) = Rational(2);
  QMat embed(4, 3);
  for (size_t j = 0; j < 3; ++j) embed.at(1 + j, j) = Rational(1);
  QVec a1(4);
  a1[0] = Rational(1);
  GrrsPresentation rprime1(4, gram, embed,
                           {{QVec(4), lam}, {a1, s}, {vec_scale(a1, Rational(-1)), s}});
  ToriGrading t = grading_extraction(rprime1);
  CHECK(*t.dot_system.type_label == FinType{FinFamily::A, 1});
  CHECK(t.lambda_t == IntLattice::full(3));
  CHECK(t.lambda == IntLattice::full(3));
  CHECK(t.lambda_0.contains({BigInt(1), BigInt(1), BigInt(1)}));
  CHECK(t.lambda_0.contains({BigInt(2), BigInt(0), BigInt(0)}));
  CHECK_FALSE(t.lambda_0.contains({BigInt(1), BigInt(0), BigInt(0)}));
}

TEST_CASE("core of a loop window") {
  AffAlgebra a = aff_sl2();
  GradedWindow w = window(a, 3);
  CoreSlice core = core_window(w);
  size_t d = w.dim();
  // sl2 at each of the 7 degrees, plus the central line; no derivation.
  CHECK(core.all.size() == 3 * 7 + 1);
  CHECK(vector_in_span(core.all, unit(d, d - 2)));         // c
  CHECK_FALSE(vector_in_span(core.all, unit(d, d - 1)));   // d

  std::vector<SVec> center = center_of_core(core);
  REQUIRE(center.size() == 1);
  CHECK(vector_in_span(center, unit(d, d - 2)));

  // A radius-1 window cannot see the central term yet: not stabilized.
  CHECK_THROWS_AS(core_window(window(a, 1)), WindowTooSmall);
}

TEST_CASE("quotient core is a torus of the expected type") {
  AffAlgebra a = aff_sl2();
  GradedWindow w = window(a, 3);
  CoreSlice q = quotient_core(w);
  CHECK(q.ideal.size() == 1);
  ToriGrading t = grading_extraction(w.pres);
  LieTorusReport rep = check_lie_torus(q, t);
  CHECK(rep.lt1.pass);
  CHECK(rep.lt2i.pass);
  CHECK(rep.lt2ii.pass);
  CHECK(rep.lt3.pass);
  CHECK(rep.lt4.pass);
  CHECK(rep.centerless.pass);
  CHECK(rep.pass());
  CHECK(rep.type_label == "(A1, 1)");

  // Without the quotient the axioms still hold but the slice has a center.
  CoreSlice pre = core_window(w);
  LieTorusReport raw = check_lie_torus(pre, t);
  CHECK(raw.lt1.pass);
  CHECK(raw.lt2i.pass);
  CHECK(raw.lt2ii.pass);
  CHECK(raw.lt3.pass);
  CHECK(raw.lt4.pass);
  CHECK_FALSE(raw.centerless.pass);
}

TEST_CASE("pipeline on a direct sum") {
  GradedWindow w = window(make_affine(sl2_sl2()), 3);
  std::vector<LieTorusReport> reports = core_mod_center_pipeline(w);
  REQUIRE(reports.size() == 2);
  for (const LieTorusReport& rep : reports) {
    CHECK(rep.pass());
    CHECK(rep.type_label == "(A1, 1)");
  }

  // The whole window fails the single-component premise of the grading.
  CHECK_THROWS_AS(grading_extraction(w.pres), NotIndecomposable);
}

TEST_CASE("pipeline verdicts are stable in the window radius") {
  AffAlgebra a = aff_sl2();
  std::vector<LieTorusReport> r3 = core_mod_center_pipeline(window(a, 3));
  std::vector<LieTorusReport> r4 = core_mod_center_pipeline(window(a, 4));
  REQUIRE(r3.size() == 1);
  REQUIRE(r4.size() == 1);
  CHECK(r3[0].pass());
  CHECK(r4[0].pass());
  CHECK(r3[0].type_label == r4[0].type_label);
}

TEST_CASE("pipeline on finite algebras") {
  std::vector<LieTorusReport> reports = core_mod_center_pipeline(gl2());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].pass());
  CHECK(reports[0].type_label == "(A1, 0)");

  std::vector<LieTorusReport> two = core_mod_center_pipeline(sl2_sl2());
  REQUIRE(two.size() == 2);
  CHECK(two[0].pass());
  CHECK(two[1].pass());
}

TEST_CASE("pipeline on a twisted fixed-point window") {
  AffAlgebra a = aff_sl2();
  TwistedAutomorphism s = make_twisted_automorphism(a, diag_involution(), 2);
  GradedWindow w = fixed_subalgebra(a, s, 3);
  std::vector<LieTorusReport> reports = core_mod_center_pipeline(w);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].pass());
  CHECK(reports[0].type_label == "(A1, 1)");
}

TEST_CASE("intrinsic decomposition of a doubled loop window") {
  GradedWindow w = window(make_affine(sl2_sl2()), 2);
  GrlaHandle h = w.handle();
  IntrinsicDecomposition dec = intrinsic_decomposition(h);
  REQUIRE(dec.components.size() == 2);
  size_t d = w.dim();
  SVec c = unit(d, d - 2), dd = unit(d, d - 1);
  for (const IntrinsicComponent& comp : dec.components) {
    CHECK(comp.type == FinType{FinFamily::A, 1});
    CHECK(comp.h0.size() == 1);
    CHECK(vector_in_span(comp.h0, c));
    CHECK(comp.d.size() == 1);
    CHECK(vector_in_span(comp.gi, c));
    CHECK(vector_in_span(comp.gi, dd));
  }
  // The two pieces overlap in the center-derivation plane: the sum is not
  // direct.
  std::vector<SVec> overlap =
      span_intersect(dec.components[0].gi, dec.components[1].gi, d);
  CHECK(vector_in_span(overlap, c));
  CHECK(vector_in_span(overlap, dd));
  CHECK(dec.w.empty());
  CHECK(dec.isolated.empty());
  CHECK(dec.cross_core_commute.pass);
  CHECK(dec.w_centralizes.pass);
  CHECK(dec.isolated_centralize_core.pass);
}
