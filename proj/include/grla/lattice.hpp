#pragma once

#include <optional>
#include <vector>

#include "grla/intmat.hpp"

namespace grla {

struct IncompatibleModuli : std::runtime_error {
  IncompatibleModuli()
      : std::runtime_error("coset unions have incompatible moduli (no finite common refinement)") {}
};

/// Sublattice of Z^nu, stored as a canonical row-HNF basis (zero rows
/// dropped).  Equal lattices have identical bases.
class IntLattice {
 public:
  explicit IntLattice(size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

  /// Lattice generated by the rows of g.
  static IntLattice from_generators(size_t ambient_rank, const IntMat& g);
  static IntLattice full(size_t ambient_rank) {
    return from_generators(ambient_rank, IntMat::identity(ambient_rank));
  }

  size_t ambient_rank() const { return ambient_; }
  size_t rank() const { return basis_.rows(); }
  const IntMat& basis() const { return basis_; }

  bool contains(const IntVec& v) const;

  /// Canonical representative of v modulo this lattice.
  IntVec reduce(const IntVec& v) const;

  IntLattice sum(const IntLattice& other) const;
  IntLattice intersect(const IntLattice& other) const;
  IntLattice scaled(const BigInt& k) const;

  bool contains_lattice(const IntLattice& other) const;

  /// Coset representatives of `other` modulo this lattice, when the index is
  /// finite (requires this <= other and equal ranks); nullopt otherwise.
  std::optional<std::vector<IntVec>> cosets_in(const IntLattice& other) const;

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  size_t ambient_;
  IntMat basis_;
};

/// Finite union of cosets of a single lattice inside Z^nu.  Residues are
/// canonically reduced, sorted and deduplicated, so structural equality is
/// set equality.
class CosetUnion {
 public:
  explicit CosetUnion(IntLattice modulus) : modulus_(std::move(modulus)) {}
  CosetUnion(IntLattice modulus, std::vector<IntVec> residues);

  /// The lattice itself, as the single coset 0 + L.
  static CosetUnion lattice(IntLattice l) {
    IntVec zero(l.ambient_rank());
    return CosetUnion(std::move(l), {zero});
  }
  static CosetUnion empty(size_t ambient_rank) { return CosetUnion(IntLattice(ambient_rank)); }

  size_t ambient_rank() const { return modulus_.ambient_rank(); }
  const IntLattice& modulus() const { return modulus_; }
  const std::vector<IntVec>& residues() const { return residues_; }
  bool is_empty() const { return residues_.empty(); }

  bool member(const IntVec& x) const;

  CosetUnion minkowski(const CosetUnion& other) const;
  CosetUnion negate() const;
  CosetUnion scale(const BigInt& k) const;
  CosetUnion shifted(const IntVec& t) const;

  CosetUnion intersect(const CosetUnion& other) const;
  CosetUnion setminus(const CosetUnion& other) const;
  CosetUnion set_union(const CosetUnion& other) const;
  bool subset_of(const CosetUnion& other) const;

  bool is_semilattice() const;
  IntLattice zspan() const;

  /// All members with every coordinate in [lo[i], hi[i]], lexicographically
  /// sorted.
  std::vector<IntVec> enumerate_window(const IntVec& lo, const IntVec& hi) const;

  friend bool operator==(const CosetUnion& a, const CosetUnion& b) {
    return a.modulus_ == b.modulus_ && a.residues_ == b.residues_;
  }

  /// Residue list of this set modulo the finer sublattice m; throws
  /// IncompatibleModuli unless m has the same rank as the current modulus
  /// and is contained in it.
  std::vector<IntVec> residues_mod(const IntLattice& m) const;

 private:
  IntLattice modulus_;
  std::vector<IntVec> residues_;
};

}  // namespace grla
