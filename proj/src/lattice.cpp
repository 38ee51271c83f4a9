#include "grla/lattice.hpp"

#include <algorithm>

namespace grla {

IntLattice IntLattice::from_generators(size_t ambient_rank, const IntMat& g) {
  if (g.cols() != ambient_rank) throw DimensionMismatch("lattice generators");
  auto hnf = hermite_normal_form(g);
  IntLattice l(ambient_rank);
  IntMat basis(hnf.pivot_cols.size(), ambient_rank);
  for (size_t i = 0; i < basis.rows(); ++i)
    for (size_t j = 0; j < ambient_rank; ++j) basis.at(i, j) = hnf.h.at(i, j);
  l.basis_ = std::move(basis);
  return l;
}

bool IntLattice::contains(const IntVec& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("lattice membership");
  return int_solve_left(basis_, v).has_value();
}

IntVec IntLattice::reduce(const IntVec& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("lattice reduce");
  IntVec out = v;
  // Rows are in HNF with strictly increasing pivots, so greedy reduction in
  // row order is canonical on cosets.
  for (size_t r = 0; r < basis_.rows(); ++r) {
    size_t p = 0;
    while (basis_.at(r, p) == 0) ++p;
    BigInt d = basis_.at(r, p);
    BigInt q = out[p] / d;
    if (out[p] - q * d < 0) q -= 1;  // floor division
    if (q != 0)
      for (size_t j = p; j < ambient_; ++j) out[j] -= q * basis_.at(r, j);
  }
  return out;
}

IntLattice IntLattice::sum(const IntLattice& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("lattice sum");
  IntMat stacked(basis_.rows() + other.basis_.rows(), ambient_);
  for (size_t i = 0; i < basis_.rows(); ++i)
    for (size_t j = 0; j < ambient_; ++j) stacked.at(i, j) = basis_.at(i, j);
  for (size_t i = 0; i < other.basis_.rows(); ++i)
    for (size_t j = 0; j < ambient_; ++j) stacked.at(basis_.rows() + i, j) = other.basis_.at(i, j);
  return from_generators(ambient_, stacked);
}

IntLattice IntLattice::intersect(const IntLattice& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("lattice intersect");
  if (rank() == 0 || other.rank() == 0) return IntLattice(ambient_);
  IntMat stacked(basis_.rows() + other.basis_.rows(), ambient_);
  for (size_t i = 0; i < basis_.rows(); ++i)
    for (size_t j = 0; j < ambient_; ++j) stacked.at(i, j) = basis_.at(i, j);
  for (size_t i = 0; i < other.basis_.rows(); ++i)
    for (size_t j = 0; j < ambient_; ++j) stacked.at(basis_.rows() + i, j) = other.basis_.at(i, j);
  auto kern = int_left_kernel(stacked);
  IntMat gens(kern.size(), ambient_);
  for (size_t i = 0; i < kern.size(); ++i) {
    // The first block of the kernel vector gives an element of both lattices.
    IntVec x(kern[i].begin(), kern[i].begin() + static_cast<long>(basis_.rows()));
    IntVec v = int_vec_mat(x, basis_);
    for (size_t j = 0; j < ambient_; ++j) gens.at(i, j) = v[j];
  }
  return from_generators(ambient_, gens);
}

IntLattice IntLattice::scaled(const BigInt& k) const {
  IntMat g = basis_;
  for (size_t i = 0; i < g.rows(); ++i)
    for (size_t j = 0; j < g.cols(); ++j) g.at(i, j) *= k;
  return from_generators(ambient_, g);
}

bool IntLattice::contains_lattice(const IntLattice& other) const {
  for (size_t i = 0; i < other.basis_.rows(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

std::optional<std::vector<IntVec>> IntLattice::cosets_in(const IntLattice& other) const {
  if (rank() != other.rank() || !other.contains_lattice(*this)) return std::nullopt;
  if (rank() == 0) return std::vector<IntVec>{IntVec(ambient_)};
  // Write this basis in coordinates of the other's basis.
  IntMat coords(rank(), rank());
  for (size_t i = 0; i < rank(); ++i) {
    auto x = int_solve_left(other.basis_, basis_.row(i));
    if (!x) return std::nullopt;
    for (size_t j = 0; j < rank(); ++j) coords.at(i, j) = (*x)[j];
  }
  auto hnf = hermite_normal_form(coords);
  if (hnf.pivot_cols.size() != rank()) return std::nullopt;  // infinite index
  std::vector<IntVec> reps;
  IntVec t(rank());
  for (;;) {
    reps.push_back(reduce(int_vec_mat(t, other.basis_)));
    size_t k = 0;
    while (k < rank() && t[k] + 1 == hnf.h.at(k, k)) t[k++] = 0;
    if (k == rank()) break;
    ++t[k];
  }
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

CosetUnion::CosetUnion(IntLattice modulus, std::vector<IntVec> residues)
    : modulus_(std::move(modulus)) {
  for (auto& r : residues) r = modulus_.reduce(r);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  residues_ = std::move(residues);
  if (residues_.empty()) {
    modulus_ = IntLattice(modulus_.ambient_rank());
    return;
  }
  // Coarsen the modulus to the full stabilizer of the set, so that equal
  // sets get identical presentations.  Every stabilizer class mod the
  // current modulus appears among the differences r_j - r_0.
  std::vector<IntVec> stab;
  for (const auto& r : residues_) {
    IntVec d(r.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = r[i] - residues_[0][i];
    bool keeps = true;
    for (const auto& s : residues_) {
      IntVec t(s.size());
      for (size_t i = 0; i < t.size(); ++i) t[i] = s[i] + d[i];
      if (!std::binary_search(residues_.begin(), residues_.end(), modulus_.reduce(t))) {
        keeps = false;
        break;
      }
    }
    if (keeps) stab.push_back(d);
  }
  IntMat gens(stab.size() + modulus_.basis().rows(), modulus_.ambient_rank());
  for (size_t i = 0; i < stab.size(); ++i)
    for (size_t j = 0; j < gens.cols(); ++j) gens.at(i, j) = stab[i][j];
  for (size_t i = 0; i < modulus_.basis().rows(); ++i)
    for (size_t j = 0; j < gens.cols(); ++j)
      gens.at(stab.size() + i, j) = modulus_.basis().at(i, j);
  IntLattice coarse = IntLattice::from_generators(modulus_.ambient_rank(), gens);
  if (!(coarse == modulus_)) {
    modulus_ = std::move(coarse);
    for (auto& r : residues_) r = modulus_.reduce(r);
    std::sort(residues_.begin(), residues_.end());
    residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  }
}

bool CosetUnion::member(const IntVec& x) const {
  if (x.size() != ambient_rank()) throw DimensionMismatch("coset union membership");
  return std::binary_search(residues_.begin(), residues_.end(), modulus_.reduce(x));
}

CosetUnion CosetUnion::minkowski(const CosetUnion& other) const {
  if (other.ambient_rank() != ambient_rank()) throw DimensionMismatch("minkowski sum");
  if (is_empty() || other.is_empty()) return empty(ambient_rank());
  IntLattice m = modulus_.sum(other.modulus_);
  std::vector<IntVec> sums;
  for (const auto& a : residues_)
    for (const auto& b : other.residues_) {
      IntVec s = a;
      for (size_t i = 0; i < s.size(); ++i) s[i] += b[i];
      sums.push_back(std::move(s));
    }
  return CosetUnion(std::move(m), std::move(sums));
}

CosetUnion CosetUnion::negate() const {
  std::vector<IntVec> neg;
  for (const auto& r : residues_) {
    IntVec v = r;
    for (auto& x : v) x = -x;
    neg.push_back(std::move(v));
  }
  return CosetUnion(modulus_, std::move(neg));
}

CosetUnion CosetUnion::scale(const BigInt& k) const {
  std::vector<IntVec> scaled;
  for (const auto& r : residues_) {
    IntVec v = r;
    for (auto& x : v) x *= k;
    scaled.push_back(std::move(v));
  }
  return CosetUnion(modulus_.scaled(k), std::move(scaled));
}

CosetUnion CosetUnion::shifted(const IntVec& t) const {
  std::vector<IntVec> out;
  for (const auto& r : residues_) {
    IntVec v = r;
    for (size_t i = 0; i < v.size(); ++i) v[i] += t[i];
    out.push_back(std::move(v));
  }
  return CosetUnion(modulus_, std::move(out));
}

std::vector<IntVec> CosetUnion::residues_mod(const IntLattice& m) const {
  auto reps = m.cosets_in(modulus_);
  if (!reps) throw IncompatibleModuli();
  std::vector<IntVec> out;
  for (const auto& r : residues_)
    for (const auto& c : *reps) {
      IntVec v = r;
      for (size_t i = 0; i < v.size(); ++i) v[i] += c[i];
      out.push_back(m.reduce(v));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CosetUnion CosetUnion::intersect(const CosetUnion& other) const {
  if (other.ambient_rank() != ambient_rank()) throw DimensionMismatch("coset intersect");
  IntLattice m = modulus_.intersect(other.modulus_);
  std::vector<IntVec> hits;
  const size_t ra = modulus_.basis().rows(), rb = other.modulus_.basis().rows();
  IntMat stacked(ra + rb, ambient_rank());
  for (size_t i = 0; i < ra; ++i)
    for (size_t j = 0; j < ambient_rank(); ++j) stacked.at(i, j) = modulus_.basis().at(i, j);
  for (size_t i = 0; i < rb; ++i)
    for (size_t j = 0; j < ambient_rank(); ++j)
      stacked.at(ra + i, j) = -other.modulus_.basis().at(i, j);
  for (const auto& a : residues_)
    for (const auto& b : other.residues_) {
      IntVec diff(ambient_rank());
      for (size_t i = 0; i < diff.size(); ++i) diff[i] = b[i] - a[i];
      auto z = int_solve_left(stacked, diff);
      if (!z) continue;
      IntVec x(z->begin(), z->begin() + static_cast<long>(ra));
      IntVec point = a;
      IntVec shift = int_vec_mat(x, modulus_.basis());
      for (size_t i = 0; i < point.size(); ++i) point[i] += shift[i];
      hits.push_back(std::move(point));
    }
  return CosetUnion(std::move(m), std::move(hits));
}

CosetUnion CosetUnion::setminus(const CosetUnion& other) const {
  if (other.ambient_rank() != ambient_rank()) throw DimensionMismatch("coset setminus");
  if (is_empty() || other.is_empty()) return *this;
  IntLattice m = modulus_.intersect(other.modulus_);
  std::vector<IntVec> kept;
  for (const auto& r : residues_mod(m))
    if (!other.member(r)) kept.push_back(r);
  return CosetUnion(std::move(m), std::move(kept));
}

CosetUnion CosetUnion::set_union(const CosetUnion& other) const {
  if (other.ambient_rank() != ambient_rank()) throw DimensionMismatch("coset union");
  if (is_empty()) return other;
  if (other.is_empty()) return *this;
  IntLattice m = modulus_.intersect(other.modulus_);
  std::vector<IntVec> all = residues_mod(m);
  std::vector<IntVec> more = other.residues_mod(m);
  all.insert(all.end(), more.begin(), more.end());
  return CosetUnion(std::move(m), std::move(all));
}

bool CosetUnion::subset_of(const CosetUnion& other) const {
  if (other.ambient_rank() != ambient_rank()) throw DimensionMismatch("coset subset");
  if (is_empty()) return true;
  if (other.is_empty()) return false;
  IntLattice m = modulus_.intersect(other.modulus_);
  for (const auto& r : residues_mod(m))
    if (!other.member(r)) return false;
  return true;
}

bool CosetUnion::is_semilattice() const {
  IntVec zero(ambient_rank());
  if (!member(zero)) return false;
  if (!(negate() == *this)) return false;
  return minkowski(scale(2)).subset_of(*this);
}

IntLattice CosetUnion::zspan() const {
  IntMat gens(residues_.size() + modulus_.basis().rows(), ambient_rank());
  for (size_t i = 0; i < residues_.size(); ++i)
    for (size_t j = 0; j < ambient_rank(); ++j) gens.at(i, j) = residues_[i][j];
  for (size_t i = 0; i < modulus_.basis().rows(); ++i)
    for (size_t j = 0; j < ambient_rank(); ++j)
      gens.at(residues_.size() + i, j) = modulus_.basis().at(i, j);
  return IntLattice::from_generators(ambient_rank(), gens);
}

std::vector<IntVec> CosetUnion::enumerate_window(const IntVec& lo, const IntVec& hi) const {
  const size_t nu = ambient_rank();
  if (lo.size() != nu || hi.size() != nu) throw DimensionMismatch("enumerate window");
  std::vector<IntVec> out;
  if (is_empty()) return out;
  IntVec v = lo;
  for (size_t i = 0; i < nu; ++i)
    if (lo[i] > hi[i]) return out;
  for (;;) {
    if (member(v)) out.push_back(v);
    if (nu == 0) break;
    size_t k = nu;
    while (k > 0 && v[k - 1] == hi[k - 1]) {
      --k;
      v[k] = lo[k];
    }
    if (k == 0) break;
    ++v[k - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace grla
