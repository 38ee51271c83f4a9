#include "doctest.h"
#include "grla/liealg.hpp"

using namespace grla;

namespace {

SVec sv(std::vector<long long> e) {
  SVec v(e.size());
  for (size_t i = 0; i < e.size(); ++i) v[i] = Scalar(e[i]);
  return v;
}

QVec qv(std::vector<long long> e) {
  QVec v(e.size());
  for (size_t i = 0; i < e.size(); ++i) v[i] = Rational(e[i]);
  return v;
}

StructLieAlgebra sl2() {
  SMat form(3, 3);
  form.at(0, 1) = form.at(1, 0) = Scalar(1);  // (e, f) = 1
  form.at(2, 2) = Scalar(2);                  // (h, h) = 2
  StructLieAlgebra L({"e", "f", "h"}, form, {2});
  L.set_bracket(0, 1, sv({0, 0, 1}));   // [e, f] = h
  L.set_bracket(2, 0, sv({2, 0, 0}));   // [h, e] = 2e
  L.set_bracket(2, 1, sv({0, -2, 0}));  // [h, f] = -2f
  return L;
}

StructLieAlgebra gl2() {
  SMat form(4, 4);
  form.at(0, 1) = form.at(1, 0) = Scalar(1);
  form.at(2, 2) = Scalar(2);
  form.at(3, 3) = Scalar(2);  // (z, z) = tr(1) over 2x2 scaled as diag
  StructLieAlgebra L({"e", "f", "h", "z"}, form, {2, 3});
  L.set_bracket(0, 1, sv({0, 0, 1, 0}));
  L.set_bracket(2, 0, sv({2, 0, 0, 0}));
  L.set_bracket(2, 1, sv({0, -2, 0, 0}));
  return L;
}

StructLieAlgebra heisenberg_d() {
  SMat form(4, 4);
  form.at(0, 1) = form.at(1, 0) = Scalar(1);  // (x, y) = 1
  form.at(2, 3) = form.at(3, 2) = Scalar(1);  // (z, d) = 1
  StructLieAlgebra L({"x", "y", "z", "d"}, form, {2, 3});
  L.set_bracket(0, 1, sv({0, 0, 1, 0}));   // [x, y] = z
  L.set_bracket(3, 0, sv({1, 0, 0, 0}));   // [d, x] = x
  L.set_bracket(3, 1, sv({0, -1, 0, 0}));  // [d, y] = -y
  return L;
}

StructLieAlgebra sl2_sl2() {
  SMat form(6, 6);
  form.at(0, 1) = form.at(1, 0) = Scalar(1);
  form.at(2, 2) = Scalar(2);
  form.at(3, 4) = form.at(4, 3) = Scalar(1);
  form.at(5, 5) = Scalar(2);
  StructLieAlgebra L({"e1", "f1", "h1", "e2", "f2", "h2"}, form, {2, 5});
  L.set_bracket(0, 1, sv({0, 0, 1, 0, 0, 0}));
  L.set_bracket(2, 0, sv({2, 0, 0, 0, 0, 0}));
  L.set_bracket(2, 1, sv({0, -2, 0, 0, 0, 0}));
  L.set_bracket(3, 4, sv({0, 0, 0, 0, 0, 1}));
  L.set_bracket(5, 3, sv({0, 0, 0, 2, 0, 0}));
  L.set_bracket(5, 4, sv({0, 0, 0, 0, -2, 0}));
  return L;
}

// Independent oracle: build an algebra from explicit matrices, with brackets
// from commutators and the trace form.
StructLieAlgebra from_matrices(const std::vector<SMat>& mats,
                               const std::vector<std::string>& labels,
                               std::vector<size_t> cartan) {
  size_t n = mats.size();
  size_t d = mats[0].rows();
  auto flatten = [&](const SMat& m) {
    SVec v(d * d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) v[i * d + j] = m.at(i, j);
    return v;
  };
  SMat basis(d * d, n);
  for (size_t k = 0; k < n; ++k) {
    SVec f = flatten(mats[k]);
    for (size_t i = 0; i < d * d; ++i) basis.at(i, k) = f[i];
  }
  SMat form(n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      SMat p = mat_mul(mats[a], mats[b]);
      Scalar tr;
      for (size_t i = 0; i < d; ++i) tr += p.at(i, i);
      form.at(a, b) = tr;
    }
  StructLieAlgebra L(labels, form, std::move(cartan));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      SMat comm(d, d);
      SMat ab = mat_mul(mats[a], mats[b]);
      SMat ba = mat_mul(mats[b], mats[a]);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) comm.at(i, j) = ab.at(i, j) - ba.at(i, j);
      auto coords = solve_linear(basis, flatten(comm));
      REQUIRE(coords.has_value());
      L.set_bracket(a, b, *coords);
    }
  return L;
}

SMat unit_matrix(size_t d, size_t i, size_t j) {
  SMat m(d, d);
  m.at(i, j) = Scalar(1);
  return m;
}

StructLieAlgebra sl3() {
  size_t d = 3;
  std::vector<SMat> mats;
  std::vector<std::string> labels;
  for (auto [i, j] : std::vector<std::pair<size_t, size_t>>{
           {0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}}) {
    mats.push_back(unit_matrix(d, i, j));
    labels.push_back("e" + std::to_string(i) + std::to_string(j));
  }
  SMat h1(d, d), h2(d, d);
  h1.at(0, 0) = Scalar(1);
  h1.at(1, 1) = Scalar(-1);
  h2.at(1, 1) = Scalar(1);
  h2.at(2, 2) = Scalar(-1);
  mats.push_back(h1);
  mats.push_back(h2);
  labels.push_back("h1");
  labels.push_back("h2");
  return from_matrices(mats, labels, {6, 7});
}

}  // namespace

TEST_CASE("validation of structure constants and form") {
  CHECK(validate_algebra(sl2()).all());
  CHECK(validate_algebra(gl2()).all());
  CHECK(validate_algebra(heisenberg_d()).all());
  CHECK(validate_algebra(sl2_sl2()).all());
  CHECK(validate_algebra(sl3()).all());

  // Doubling [e, f] to 2h keeps the Jacobi identity (the result is still a
  // Lie algebra) but breaks invariance of the fixed form.
  StructLieAlgebra doubled = sl2();
  doubled.set_bracket(0, 1, sv({0, 0, 2}));
  AlgebraReport rep = validate_algebra(doubled);
  CHECK(rep.jacobi.pass);
  CHECK_FALSE(rep.form_invariant.pass);
  CHECK_FALSE(rep.all());

  // Unbalancing the two eigenvalues breaks the Jacobi identity.
  StructLieAlgebra skew = sl2();
  skew.set_bracket(2, 1, sv({0, -3, 0}));
  AlgebraReport rep2 = validate_algebra(skew);
  CHECK_FALSE(rep2.jacobi.pass);
  CHECK(rep2.jacobi.witness.find("e") != std::string::npos);
}

TEST_CASE("root decomposition") {
  RootDecomposition rd = root_decomposition(sl2());
  REQUIRE(rd.roots.size() == 3);
  CHECK(rd.roots == std::vector<QVec>{qv({-2}), qv({0}), qv({2})});
  CHECK(rd.spaces[0].size() == 1);
  CHECK(rd.spaces[2].size() == 1);
  CHECK(rd.zero_index == 1);
  auto idx = rd.find(qv({2}));
  REQUIRE(idx.has_value());
  CHECK(rd.t[*idx] == sv({0, 0, 1}));  // t of the positive root is h
  CHECK_FALSE(rd.isotropic[*idx]);

  RootDecomposition rg = root_decomposition(gl2());
  REQUIRE(rg.roots.size() == 3);
  CHECK(rg.spaces[rg.zero_index].size() == 2);

  SMat f1(1, 1);
  f1.at(0, 0) = Scalar(1);
  StructLieAlgebra abelian({"x"}, f1, {0});
  RootDecomposition ra = root_decomposition(abelian);
  CHECK(ra.roots == std::vector<QVec>{qv({0})});

  RootDecomposition rh = root_decomposition(heisenberg_d());
  REQUIRE(rh.roots.size() == 3);
  for (size_t p = 0; p < rh.roots.size(); ++p) CHECK(rh.isotropic[p]);
}

TEST_CASE("sl2 triples") {
  StructLieAlgebra L = sl2();
  RootDecomposition rd = root_decomposition(L);
  Sl2Triple t = sl2_triple(L, rd, qv({2}));
  CHECK(t.e == sv({1, 0, 0}));
  CHECK(t.h == sv({0, 0, 1}));
  CHECK(L.bracket(t.e, t.f) == t.h);
  CHECK(L.bracket(t.h, t.e) == vec_scale(t.e, Scalar(2)));
  CHECK(L.bracket(t.h, t.f) == vec_scale(t.f, Scalar(-2)));

  StructLieAlgebra M = sl3();
  RootDecomposition rm = root_decomposition(M);
  // Long root e13: eigenvalues (1, 1) on (h1, h2).
  auto idx = rm.find(qv({1, 1}));
  REQUIRE(idx.has_value());
  Sl2Triple lt = sl2_triple(M, rm, qv({1, 1}));
  CHECK(M.bracket(lt.e, lt.f) == lt.h);
  CHECK(M.bracket(lt.h, lt.e) == vec_scale(lt.e, Scalar(2)));
  CHECK(M.bracket(lt.h, lt.f) == vec_scale(lt.f, Scalar(-2)));
  CHECK(M.pair(lt.h, lt.h) == Scalar(2));

  StructLieAlgebra H = heisenberg_d();
  RootDecomposition rh = root_decomposition(H);
  CHECK_THROWS_AS(sl2_triple(H, rh, qv({0, 1})), IsotropicRoot);
}

TEST_CASE("GR axiom reports") {
  GRReport s = check_GR(sl2());
  CHECK(s.grla());
  CHECK(s.tame.pass);

  GRReport g = check_GR(gl2());
  CHECK(g.gr1.pass);
  CHECK(g.gr2.pass);
  CHECK(g.gr3.pass);
  CHECK(g.gr4.pass);
  CHECK(g.gr5.pass);
  CHECK(g.gr6a.pass);
  CHECK(g.gr6b.pass);
  CHECK_FALSE(g.tame.pass);

  GRReport h = check_GR(heisenberg_d());
  CHECK(h.gr1.pass);
  CHECK(h.gr2.pass);
  CHECK(h.gr3.pass);
  CHECK(h.gr4.pass);
  CHECK_FALSE(h.gr5.pass);

  GRReport d = check_GR(sl2_sl2());
  CHECK(d.gr1.pass);
  CHECK_FALSE(d.gr6a.pass);  // two orthogonal components
  CHECK(d.tame.pass);
}

TEST_CASE("core, center, centralizer, quotient") {
  StructLieAlgebra L = gl2();
  RootDecomposition rd = root_decomposition(L);
  std::vector<SVec> gc = core(L, rd);
  CHECK(gc.size() == 3);
  CHECK(vector_in_span(gc, sv({0, 0, 1, 0})));        // h
  CHECK_FALSE(vector_in_span(gc, sv({0, 0, 0, 1})));  // z

  std::vector<SVec> z = center(L);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == sv({0, 0, 0, 1}));
  CHECK(subalgebra_center(L, gc).empty());

  // The centralizer of the core is the scalars.
  std::vector<SVec> cent = centralizer(L, gc);
  REQUIRE(cent.size() == 1);
  CHECK(cent[0] == sv({0, 0, 0, 1}));

  QuotientAlgebra q = quotient_by_ideal(L, z);
  CHECK(q.alg.dim() == 3);
  CHECK(check_GR(q.alg).grla());
  CHECK(is_simple(q.alg));

  StructLieAlgebra s = sl2();
  CHECK_THROWS_AS(quotient_by_ideal(s, {sv({1, 0, 0})}), NotAnIdeal);

  // Core of sl2 is all of sl2, and it is a perfect ideal.
  RootDecomposition rs = root_decomposition(s);
  std::vector<SVec> sc = core(s, rs);
  CHECK(sc.size() == 3);
  std::vector<SVec> derived;
  for (const SVec& a : sc)
    for (const SVec& b : sc) derived.push_back(s.bracket(a, b));
  CHECK(span_basis(derived, 3).size() == 3);
  for (size_t i = 0; i < L.dim(); ++i)
    for (const SVec& v : gc) CHECK(vector_in_span(gc, L.bracket(L.basis_vector(i), v)));
}

TEST_CASE("simplicity check") {
  CHECK(is_simple(sl2()));
  CHECK(is_simple(sl3()));
  CHECK_FALSE(is_simple(gl2()));
  CHECK_FALSE(is_simple(sl2_sl2()));
  CHECK_FALSE(is_simple(heisenberg_d()));
}

TEST_CASE("intrinsic decomposition of gl2") {
  GrlaHandle h = make_handle(gl2());
  IntrinsicDecomposition dec = intrinsic_decomposition(h);
  REQUIRE(dec.components.size() == 1);
  const IntrinsicComponent& c = dec.components[0];
  CHECK(c.type == FinType{FinFamily::A, 1});
  CHECK(c.h_dot.size() == 1);
  CHECK(c.h0.empty());
  CHECK(c.d.empty());
  CHECK(c.dim_d_ok);
  CHECK(c.gi.size() == 3);  // the traceless part
  CHECK(vector_in_span(c.gi, sv({0, 0, 1, 0})));
  CHECK_FALSE(vector_in_span(c.gi, sv({0, 0, 0, 1})));
  CHECK(c.gi_core.size() == 3);
  REQUIRE(dec.w.size() == 1);  // the scalars
  CHECK(dec.w[0] == sv({0, 0, 0, 1}));
  CHECK(dec.isolated.empty());
  CHECK(dec.cross_core_commute.pass);
  CHECK(dec.w_centralizes.pass);
  CHECK(dec.isolated_centralize_core.pass);
  CHECK(dec.cross_bracket_containment.pass);
}

TEST_CASE("intrinsic decomposition of a direct sum") {
  StructLieAlgebra L = sl2_sl2();
  GrlaHandle h = make_handle(L);
  IntrinsicDecomposition dec = intrinsic_decomposition(h);
  REQUIRE(dec.components.size() == 2);
  CHECK(dec.w.empty());
  CHECK(dec.isolated.empty());
  for (const auto& c : dec.components) {
    CHECK(c.type == FinType{FinFamily::A, 1});
    CHECK(c.gi.size() == 3);
    CHECK(c.h0.empty());
    CHECK(c.d.empty());
    CHECK(c.dim_d_ok);
  }
  // The sum is direct: the two subalgebras intersect trivially.
  std::vector<SVec> both = dec.components[0].gi;
  both.insert(both.end(), dec.components[1].gi.begin(), dec.components[1].gi.end());
  CHECK(span_basis(both, 6).size() == 6);
  CHECK(dec.cross_core_commute.pass);
  CHECK(dec.cross_bracket_containment.pass);

  // Centers of the component cores sum to the center of the core.
  RootDecomposition rd = root_decomposition(L);
  std::vector<SVec> gc = core(L, rd);
  std::vector<SVec> zc = subalgebra_center(L, gc);
  std::vector<SVec> zsum;
  for (const auto& c : dec.components) {
    auto zi = subalgebra_center(L, c.gi_core);
    zsum.insert(zsum.end(), zi.begin(), zi.end());
  }
  CHECK(same_span(zc, zsum, 6));
}

TEST_CASE("reductive shape for nonsingular inputs") {
  // Consequence: every component subalgebra is simple and the
  // remainder is central.
  for (const StructLieAlgebra& L : {gl2(), sl2_sl2()}) {
    GrlaHandle h = make_handle(L);
    IntrinsicDecomposition dec = intrinsic_decomposition(h);
    for (const auto& c : dec.components) {
      std::vector<SVec> cartan_vecs;
      for (const SVec& v : c.h_dot) cartan_vecs.push_back(v);
      StructLieAlgebra sub = restrict_to_subalgebra(L, c.gi, cartan_vecs);
      CHECK(is_simple(sub));
    }
    std::vector<SVec> z = center(L);
    for (const SVec& w : dec.w) CHECK(vector_in_span(z, w));
  }
}
