#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grla/grrs.hpp"
#include "grla/linalg.hpp"

namespace grla {

struct NotDiagonalizable : std::runtime_error {
  explicit NotDiagonalizable(const std::string& what) : std::runtime_error(what) {}
};
struct IsotropicRoot : std::runtime_error {
  explicit IsotropicRoot(const std::string& what) : std::runtime_error(what) {}
};
struct NotAnIdeal : std::runtime_error {
  explicit NotAnIdeal(const std::string& what) : std::runtime_error(what) {}
};
struct NoDualBasis : std::runtime_error {
  explicit NoDualBasis(const std::string& what) : std::runtime_error(what) {}
};

/// Finite-dimensional Lie algebra given by structure constants, an invariant
/// symmetric form, and a distinguished abelian subalgebra spanned by basis
/// vectors (the "Cartan part").
class StructLieAlgebra {
 public:
  StructLieAlgebra(std::vector<std::string> labels, SMat form, std::vector<size_t> cartan);

  size_t dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SMat& form_matrix() const { return form_; }
  const std::vector<size_t>& cartan() const { return cartan_; }

  /// Sets [b_i, b_j] = value and [b_j, b_i] = -value.
  void set_bracket(size_t i, size_t j, SVec value);

  const SVec& basis_bracket(size_t i, size_t j) const { return c_[i][j]; }

  SVec bracket(const SVec& x, const SVec& y) const;
  Scalar pair(const SVec& x, const SVec& y) const;

  /// Matrix of ad(x) acting on coordinates.
  SMat ad(const SVec& x) const;

  SVec basis_vector(size_t i) const;

 private:
  size_t n_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SVec>> c_;
  SMat form_;
  std::vector<size_t> cartan_;
};

struct CheckItem {
  bool pass = true;
  std::string witness;
};

struct AlgebraReport {
  CheckItem antisymmetry, jacobi, form_symmetric, form_invariant, form_nondegenerate,
      cartan_abelian, ad_diagonalizable;
  bool all() const {
    return antisymmetry.pass && jacobi.pass && form_symmetric.pass && form_invariant.pass &&
           form_nondegenerate.pass && cartan_abelian.pass && ad_diagonalizable.pass;
  }
};

AlgebraReport validate_algebra(const StructLieAlgebra& L);

/// Simultaneous eigenspace decomposition under the Cartan part.  Roots are
/// rational functionals recorded by their values on the Cartan basis vectors.
struct RootDecomposition {
  std::vector<QVec> roots;
  std::vector<std::vector<SVec>> spaces;
  std::vector<SVec> t;  // form representative of each root
  std::vector<bool> isotropic;
  size_t zero_index = 0;

  std::optional<size_t> find(const QVec& root) const;
};

RootDecomposition root_decomposition(const StructLieAlgebra& L);

struct Sl2Triple {
  SVec e, h, f;
};

Sl2Triple sl2_triple(const StructLieAlgebra& L, const RootDecomposition& rd, const QVec& alpha);

struct GRReport {
  CheckItem gr1, gr2, gr3, gr4, gr5, gr6a, gr6b, tame;
  bool grla() const {
    return gr1.pass && gr2.pass && gr3.pass && gr4.pass && gr5.pass && gr6a.pass && gr6b.pass;
  }
};

GRReport check_GR(const StructLieAlgebra& L);

/// Root presentation induced by the eigenvalue functionals (coordinates on a
/// basis of their span; the form is inherited from the dual of the Cartan
/// gram matrix).  Also returns each root's coordinates, parallel to rd.roots.
std::pair<GrrsPresentation, std::vector<QVec>> induced_presentation(const StructLieAlgebra& L,
                                                                    const RootDecomposition& rd);

/// Deterministic reduced basis of the span of the given vectors.
std::vector<SVec> span_basis(const std::vector<SVec>& vectors, size_t dim);

bool vector_in_span(const std::vector<SVec>& basis, const SVec& v);

/// Smallest bracket-closed span containing the generators; brackets that
/// report nullopt are skipped.
std::vector<SVec> bracket_closure(
    const std::vector<SVec>& gens, size_t dim,
    const std::function<std::optional<SVec>(const SVec&, const SVec&)>& br);

std::vector<SVec> span_intersect(const std::vector<SVec>& a, const std::vector<SVec>& b,
                                 size_t dim);

std::vector<SVec> core(const StructLieAlgebra& L, const RootDecomposition& rd);
std::vector<SVec> center(const StructLieAlgebra& L);
std::vector<SVec> centralizer(const StructLieAlgebra& L, const std::vector<SVec>& s);
/// Center of the subalgebra spanned by s, inside that span.
std::vector<SVec> subalgebra_center(const StructLieAlgebra& L, const std::vector<SVec>& s);

struct QuotientAlgebra {
  StructLieAlgebra alg;
  SMat proj;  // coordinates of the quotient class of each ambient vector
};

QuotientAlgebra quotient_by_ideal(const StructLieAlgebra& L, const std::vector<SVec>& ideal);

/// Restriction of L to the subalgebra spanned by the given vectors, in the
/// coordinates of that basis.  cartan_vectors must lie in the span.
StructLieAlgebra restrict_to_subalgebra(const StructLieAlgebra& L, const std::vector<SVec>& basis,
                                        const std::vector<SVec>& cartan_vectors);

/// No proper nonzero ideal.  Requires an ad-diagonalizable Cartan part with
/// one-dimensional root spaces; dimension capped at 20.
bool is_simple(const StructLieAlgebra& L);

/// Uniform access to a root-graded algebra with invariant form: a finite
/// algebra in full, or a degree window of a graded one.  Brackets that leave
/// the window report nullopt.
struct GrlaHandle {
  size_t dim = 0;
  std::function<std::optional<SVec>(const SVec&, const SVec&)> bracket;
  std::function<Scalar(const SVec&, const SVec&)> form;
  std::vector<SVec> cartan;  // basis of H in ambient coordinates
  GrrsPresentation pres;
  /// Known root spaces: root coordinates in the presentation, with a basis of
  /// the root space.  The zero root's space is H.
  std::vector<std::pair<QVec, std::vector<SVec>>> spaces;
  /// Linear map sending presentation coordinates of a root to the coordinates
  /// of its form representative over the cartan basis.
  SMat t_map;
  int window = 2;

  SVec t_of(const QVec& root) const;
  const std::vector<SVec>* space_of(const QVec& root) const;
};

GrlaHandle make_handle(const StructLieAlgebra& L);

struct IntrinsicComponent {
  FinType type;
  int rank = 0;
  std::vector<SVec> h_dot;    // span of the representatives of the nonisotropic parts
  std::vector<SVec> h0;       // representatives of the component's isotropic span
  std::vector<SVec> d;        // dual partners of h0
  std::vector<SVec> gi;       // the subalgebra attached to the component
  std::vector<SVec> gi_core;  // closure of its nonisotropic root spaces
  size_t dim_core_cap_h = 0;  // dim of the sum of [G_a, G_-a]
  bool dim_d_ok = true;
};

struct IntrinsicDecomposition {
  std::vector<IntrinsicComponent> components;
  std::vector<SVec> w;         // form-orthogonal remainder of H
  std::vector<SVec> isolated;  // spaces of roots outside every component
  CheckItem cross_core_commute, w_centralizes, isolated_centralize_core, cross_bracket_containment;
};

IntrinsicDecomposition intrinsic_decomposition(const GrlaHandle& h);

}  // namespace grla
