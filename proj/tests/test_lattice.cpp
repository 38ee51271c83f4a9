#include "doctest.h"
#include "grla/lattice.hpp"

#include <algorithm>
#include <random>

using namespace grla;

namespace {

IntMat imat(size_t r, size_t c, std::vector<long long> e) {
  IntMat m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = e[i * c + j];
  return m;
}

// 2Z^3 with the four residues 0, e1, e2, e3.
CosetUnion semilattice3() {
  IntLattice two = IntLattice::full(3).scaled(2);
  return CosetUnion(two, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

// 2Z^2 with residues 0, e1, e2.
CosetUnion semilattice2() {
  IntLattice two = IntLattice::full(2).scaled(2);
  return CosetUnion(two, {{0, 0}, {1, 0}, {0, 1}});
}

std::vector<IntVec> window_oracle(const CosetUnion& a, long lo, long hi) {
  IntVec l(a.ambient_rank(), lo), h(a.ambient_rank(), hi);
  return a.enumerate_window(l, h);
}

}  // namespace

TEST_CASE("lattice canonical bases") {
  IntLattice a = IntLattice::from_generators(2, imat(2, 2, {2, 1, 0, 1}));
  IntLattice b = IntLattice::from_generators(2, imat(3, 2, {2, 0, 0, 1, 4, 1}));
  CHECK(a == b);
  CHECK(a.rank() == 2);
  CHECK(IntLattice::from_generators(2, IntMat(2, 2)).rank() == 0);
}

TEST_CASE("lattice membership and reduce") {
  IntLattice two = IntLattice::full(3).scaled(2);
  CHECK(two.contains({2, -4, 6}));
  CHECK(!two.contains({1, 0, 0}));
  CHECK(two.reduce({3, -1, 2}) == IntVec{1, 1, 0});
  // Reduction is constant on cosets.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-6, 6);
  IntLattice skew = IntLattice::from_generators(3, imat(2, 3, {2, 1, 0, 0, 3, 1}));
  for (int trial = 0; trial < 100; ++trial) {
    IntVec v{entry(rng), entry(rng), entry(rng)};
    IntVec coeff{entry(rng), entry(rng)};
    IntVec shifted = v;
    IntVec l = int_vec_mat(coeff, skew.basis());
    for (size_t i = 0; i < 3; ++i) shifted[i] += l[i];
    CHECK(skew.reduce(v) == skew.reduce(shifted));
    IntVec diff = skew.reduce(v);
    for (size_t i = 0; i < 3; ++i) diff[i] -= v[i];
    CHECK(skew.contains(diff));
  }
}

TEST_CASE("lattice sum, intersection, cosets") {
  IntLattice full = IntLattice::full(2);
  IntLattice two = full.scaled(2);
  IntLattice three = full.scaled(3);
  CHECK(two.sum(three) == full);
  CHECK(two.intersect(three) == full.scaled(6));
  CHECK(two.contains_lattice(full.scaled(4)));
  CHECK(!two.contains_lattice(three));

  auto reps = two.cosets_in(full);
  REQUIRE(reps.has_value());
  CHECK(reps->size() == 4);
  CHECK(!full.cosets_in(two).has_value());
  CHECK(!IntLattice(2).cosets_in(full).has_value());
}

TEST_CASE("coset union membership") {
  CosetUnion s = semilattice3();
  CHECK(s.member({1, 0, 0}));
  CHECK(!s.member({1, 1, 1}));
  CHECK(s.member({0, 0, 0}));
  CHECK(s.member({3, 0, -2}));
  CHECK_THROWS_AS(s.member({1, 0}), DimensionMismatch);
}

TEST_CASE("minkowski sums") {
  CosetUnion s = semilattice3();
  CosetUnion ss = s.minkowski(s);
  CHECK(ss.residues().size() == 7);
  CHECK(ss.member({1, 1, 0}));
  CHECK(!ss.member({1, 1, 1}));

  CosetUnion lam = CosetUnion::lattice(IntLattice::full(3));
  CHECK(lam.minkowski(lam) == lam);

  CosetUnion s2 = semilattice2();
  CHECK(s2.minkowski(s2) == CosetUnion::lattice(IntLattice::full(2)));
}

TEST_CASE("negate and scale") {
  CosetUnion s = semilattice3();
  CHECK(s.negate() == s);
  CosetUnion lam = CosetUnion::lattice(IntLattice::full(3));
  CHECK(lam.scale(2) == CosetUnion::lattice(IntLattice::full(3).scaled(2)));
  IntLattice two = IntLattice::full(3).scaled(2);
  CosetUnion sigma1(two, {{1, 0, 0}});
  CHECK(sigma1.negate() == sigma1);
}

TEST_CASE("set operations") {
  CosetUnion s = semilattice3();
  CosetUnion ss = s.minkowski(s);
  CosetUnion lam = CosetUnion::lattice(IntLattice::full(3));
  CosetUnion iso = lam.setminus(ss);
  CHECK(iso.residues().size() == 1);
  CHECK(iso.member({1, 1, 1}));
  CHECK(!iso.member({1, 1, 0}));

  IntLattice two = IntLattice::full(3).scaled(2);
  CosetUnion sigma1(two, {{1, 0, 0}});
  CHECK(s.intersect(sigma1) == sigma1);
  CHECK(lam.intersect(CosetUnion::lattice(two)) == CosetUnion::lattice(two));

  CHECK(s.subset_of(lam));
  CHECK(!lam.subset_of(s));
  CHECK(sigma1.subset_of(s));
  CHECK(s.set_union(iso).subset_of(lam));

  // Moduli spanning different subspaces have no finite common refinement.
  CosetUnion line(IntLattice::from_generators(2, imat(1, 2, {1, 0})), {{0, 0}});
  CosetUnion plane = CosetUnion::lattice(IntLattice::full(2));
  CHECK_THROWS_AS(plane.setminus(line), IncompatibleModuli);
  CHECK(line.subset_of(plane));
}

TEST_CASE("semilattice recognition") {
  CHECK(semilattice3().is_semilattice());
  CHECK(semilattice2().is_semilattice());
  CHECK(CosetUnion::lattice(IntLattice::full(3)).is_semilattice());
  IntLattice two = IntLattice::full(3).scaled(2);
  CHECK(!CosetUnion(two, {{1, 0, 0}}).is_semilattice());
  // 4Z u (1+4Z) u (-1+4Z): symmetric and contains 0, but 1+2*1 = 3 is missing.
  IntLattice four = IntLattice::full(1).scaled(4);
  CHECK(!CosetUnion(four, {{0}, {1}, {-1}}).is_semilattice());
}

TEST_CASE("zspan") {
  CosetUnion s = semilattice3();
  CHECK(s.zspan() == IntLattice::full(3));
  IntLattice two = IntLattice::full(3).scaled(2);
  CHECK(CosetUnion::lattice(two).zspan() == two);
  CHECK(s.minkowski(s).zspan() == IntLattice::full(3));
}

TEST_CASE("windowed enumeration") {
  CosetUnion s = semilattice3();
  auto pts = window_oracle(s, -1, 1);
  std::vector<IntVec> expect = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1},
                                {0, 0, 0},  {0, 0, 1},  {0, 1, 0},
                                {1, 0, 0}};
  std::sort(expect.begin(), expect.end());
  CHECK(pts == expect);
  CHECK(window_oracle(CosetUnion::empty(3), -2, 2).empty());
  CHECK(window_oracle(CosetUnion::lattice(IntLattice::full(3)), 0, 1).size() == 8);
}

TEST_CASE("set algebra matches pointwise enumeration on random unions") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> entry(-2, 2), count(1, 3), coord(-4, 4);
  auto random_union = [&](size_t nu) {
    // Random full-rank modulus with small determinant, a few random residues.
    IntMat g(nu, nu);
    for (;;) {
      for (size_t i = 0; i < nu; ++i)
        for (size_t j = 0; j < nu; ++j) g.at(i, j) = entry(rng);
      auto l = IntLattice::from_generators(nu, g);
      if (l.rank() != nu) continue;
      BigInt det = 1;
      for (size_t i = 0; i < nu; ++i) det *= l.basis().at(i, i);
      if (det > 12) continue;
      std::vector<IntVec> res;
      for (int i = 0, n = count(rng); i < n; ++i) {
        IntVec v(nu);
        for (auto& x : v) x = entry(rng);
        res.push_back(v);
      }
      return CosetUnion(l, res);
    }
  };
  for (int trial = 0; trial < 40; ++trial) {
    size_t nu = 1 + static_cast<size_t>(trial % 3);
    CosetUnion a = random_union(nu), b = random_union(nu);
    auto ea = window_oracle(a, -4, 4), eb = window_oracle(b, -4, 4);
    auto check_equal = [&](const CosetUnion& got, std::vector<IntVec> want) {
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      CHECK(window_oracle(got, -4, 4) == want);
    };
    std::vector<IntVec> inter, minus, uni;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(inter));
    std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(minus));
    std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(uni));
    check_equal(a.intersect(b), inter);
    check_equal(a.setminus(b), minus);
    check_equal(a.set_union(b), uni);
    CHECK(a.subset_of(b) == std::includes(eb.begin(), eb.end(), ea.begin(), ea.end()));
    // Minkowski on a half window stays inside the full window.
    auto ha = window_oracle(a, -2, 2), hb = window_oracle(b, -2, 2);
    CosetUnion mk = a.minkowski(b);
    for (const auto& x : ha)
      for (const auto& y : hb) {
        IntVec sum = x;
        for (size_t i = 0; i < nu; ++i) sum[i] += y[i];
        CHECK(mk.member(sum));
      }
    // Canonicalization idempotent.
    CHECK(CosetUnion(a.modulus(), a.residues()) == a);
  }
}

TEST_CASE("semilattice laws") {
  for (const CosetUnion& s : {semilattice2()}) {
    CosetUnion ss = s.minkowski(s);
    CHECK(s.subset_of(ss));
    CHECK(ss.zspan() == s.zspan());
  }
  CosetUnion s3 = semilattice3();
  CHECK(s3.subset_of(s3.minkowski(s3)));
  CHECK(s3.minkowski(s3).zspan() == s3.zspan());
}
