#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "grla/finroot.hpp"
#include "grla/lattice.hpp"
#include "grla/linalg.hpp"

namespace grla {

struct IsotropicDenominator : std::runtime_error {
  IsotropicDenominator() : std::runtime_error("Cartan integer against an isotropic root") {}
};
struct CartanViolation : std::runtime_error {
  explicit CartanViolation(const std::string& what) : std::runtime_error(what) {}
};
struct StringCapExceeded : std::runtime_error {
  explicit StringCapExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct BrokenString : std::runtime_error {
  explicit BrokenString(const std::string& what) : std::runtime_error(what) {}
};
struct StringDefect : std::runtime_error {
  explicit StringDefect(const std::string& what) : std::runtime_error(what) {}
};
struct AxiomViolation : std::runtime_error {
  explicit AxiomViolation(const std::string& what) : std::runtime_error(what) {}
};
struct IndefiniteComponent : std::runtime_error {
  explicit IndefiniteComponent(const std::string& what) : std::runtime_error(what) {}
};
struct BadPresentation : std::runtime_error {
  explicit BadPresentation(const std::string& what) : std::runtime_error(what) {}
};

/// One translation family of roots: { base + embed(lambda) : lambda in support }.
struct GrrsFamily {
  QVec base;
  CosetUnion support;
};

/// Finitely presented root system in Q^d.  The embedding maps Z^nu into the
/// radical of the form; isotropic families are folded onto base 0.
class GrrsPresentation {
 public:
  GrrsPresentation(size_t ambient_dim, QMat gram, QMat embed, std::vector<GrrsFamily> families);

  size_t ambient_dim() const { return dim_; }
  size_t null_rank() const { return embed_.cols(); }
  const QMat& gram() const { return gram_; }
  const QMat& embed() const { return embed_; }
  const std::vector<GrrsFamily>& families() const { return families_; }

  /// Rational preimage under the embedding, when x is in its image and the
  /// preimage is integral.
  std::optional<IntVec> embed_preimage(const QVec& x) const;

  QVec embedded(const IntVec& lambda) const;

  /// Union of the isotropic family supports (base 0), in Z^nu coordinates.
  const CosetUnion& isotropic_support() const { return iso_support_; }

  /// Indices of the nonisotropic families, in family order.
  const std::vector<size_t>& nonisotropic() const { return noniso_; }

 private:
  size_t dim_;
  QMat gram_;
  QMat embed_;
  QMat pinv_;  // left inverse of embed
  std::vector<GrrsFamily> families_;
  CosetUnion iso_support_;
  std::vector<size_t> noniso_;
};

bool grrs_member(const QVec& x, const GrrsPresentation& g);
Rational grrs_form(const QVec& x, const QVec& y, const GrrsPresentation& g);
long cartan_int(const QVec& beta, const QVec& alpha, const GrrsPresentation& g);
QVec reflect(const QVec& beta, const QVec& alpha, const GrrsPresentation& g);

/// Root string of beta through alpha: the maximal n-interval [-d, u] with
/// beta + n*alpha a root.  Verifies the interval is unbroken out to the cap
/// and that d - u equals the Cartan integer.
std::pair<int, int> root_string(const QVec& beta, const QVec& alpha, const GrrsPresentation& g,
                                int cap = 8);

struct AxiomResult {
  bool pass = true;
  std::string witness;
};

struct GrrsReport {
  std::array<AxiomResult, 7> axiom;  // (R1)..(R7)
  bool all_of(int upto) const {
    for (int i = 0; i < upto; ++i)
      if (!axiom[static_cast<size_t>(i)].pass) return false;
    return true;
  }
};

GrrsReport check_axioms(const GrrsPresentation& g, int window = 2, int string_cap = 8);

/// Isolated isotropic roots, in Z^nu coordinates.
CosetUnion isolated_roots(const GrrsPresentation& g);

struct GrrsComponent {
  GrrsPresentation r;        // R_i, with its isotropic part
  GrrsPresentation r_prime;  // R'_i = R_i^x u (<R_i> n R^0)
  FinType type;
  int rank;
  Rational c;  // normalization with (gamma, gamma)' = 2 on the first root
};

struct DecompositionResult {
  std::vector<GrrsComponent> components;
  CosetUnion r_iso;
  CosetUnion r0_0;
  int nullity;
};

DecompositionResult decompose(const GrrsPresentation& g, int window = 2);

struct QuotientResult {
  QMat proj;   // map V -> V/V0 in complement coordinates
  QMat qgram;  // induced form on the quotient
  std::vector<std::pair<FinType, std::vector<QVec>>> components;
};

QuotientResult quotient(const GrrsPresentation& g);

int nullity(const GrrsPresentation& g);

/// Positive semidefinite rescaling of the form, component by component.
std::pair<QMat, std::vector<Rational>> composite_form(const GrrsPresentation& g);

/// All roots whose Z^nu coordinates lie in [lo, hi], sorted.
std::vector<QVec> grrs_enumerate_window(const GrrsPresentation& g, const IntVec& lo,
                                        const IntVec& hi);

/// Radical component of x along the span of the nonisotropic family bases.
QVec project_null(const QVec& x, const GrrsPresentation& g);

}  // namespace grla
