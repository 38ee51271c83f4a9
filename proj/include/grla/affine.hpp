#pragma once

#include <map>

#include "grla/liealg.hpp"

namespace grla {

struct NotAutomorphism : std::runtime_error {
  explicit NotAutomorphism(const std::string& what) : std::runtime_error(what) {}
};
struct NotIsometry : std::runtime_error {
  explicit NotIsometry(const std::string& what) : std::runtime_error(what) {}
};
struct CartanNotPreserved : std::runtime_error {
  explicit CartanNotPreserved(const std::string& what) : std::runtime_error(what) {}
};

/// Loop extension of a validated base algebra by a central element c and the
/// degree derivation d.
struct AffAlgebra {
  StructLieAlgebra base;
};

AffAlgebra make_affine(StructLieAlgebra base);

/// Finitely supported element: sum of degree terms plus multiples of c and d.
struct AffElement {
  std::map<long, SVec> terms;
  Scalar c_coeff, d_coeff;

  bool is_zero() const { return terms.empty() && c_coeff.is_zero() && d_coeff.is_zero(); }
  void prune();

  friend bool operator==(const AffElement& a, const AffElement& b) {
    return a.terms == b.terms && a.c_coeff == b.c_coeff && a.d_coeff == b.d_coeff;
  }
};

AffElement aff_term(long degree, SVec v);
AffElement aff_c(const Scalar& coeff = Scalar(1));
AffElement aff_d(const Scalar& coeff = Scalar(1));
AffElement aff_add(AffElement a, const AffElement& b);
AffElement aff_scale(AffElement a, const Scalar& s);

AffElement aff_bracket(const AffElement& x, const AffElement& y, const AffAlgebra& a);
Scalar aff_form(const AffElement& x, const AffElement& y, const AffAlgebra& a);

std::string aff_to_string(const AffElement& x, const AffAlgebra& a);

/// Root presentation of the loop extension: every base root spreads along the
/// degree direction, which spans the radical.
GrrsPresentation aff_root_system(const AffAlgebra& a);

/// Finite-order twist: a base automorphism omega paired with the canonical
/// primitive m-th root of unity.  Degree-n terms are scaled by zeta^{-n}.
struct TwistedAutomorphism {
  int order = 1;
  SMat omega;
  Scalar zeta;
};

TwistedAutomorphism make_twisted_automorphism(const AffAlgebra& a, const SMat& omega, int m);

AffElement twist_apply(const TwistedAutomorphism& s, const AffElement& x);

struct AutoReport {
  CheckItem finite_order, automorphism, isometry, cartan_preserved, centralizer;
  int window_used = 0;
  bool all() const {
    return finite_order.pass && automorphism.pass && isometry.pass && cartan_preserved.pass &&
           centralizer.pass;
  }
};

AutoReport check_auto_conditions(const AffAlgebra& a, const TwistedAutomorphism& s, int n);

/// Degrees -N..N of the loop extension (or of a twist-fixed subalgebra), plus
/// c and d.  Coordinates concatenate the per-degree bases followed by c, d.
/// Brackets that leave the window report nullopt; everything retained is
/// exact.
class GradedWindow {
 public:
  int N = 0;
  AffAlgebra alg;
  std::vector<std::vector<SVec>> degree_bases;  // index n + N, base coordinates
  GrrsPresentation pres;
  std::vector<std::pair<QVec, std::vector<SVec>>> root_spaces;  // window coordinates
  std::vector<SVec> cartan;                                     // window coordinates
  SMat t_map;
  CheckItem jacobi, invariance, orthogonality, grading;

  size_t dim() const;
  size_t degree_offset(long n) const;  // first coordinate of the degree block
  std::optional<SVec> to_coords(const AffElement& x) const;
  AffElement from_coords(const SVec& v) const;
  std::optional<SVec> bracket(const SVec& x, const SVec& y) const;
  Scalar form(const SVec& x, const SVec& y) const;
  GrlaHandle handle() const;
};

GradedWindow window(const AffAlgebra& a, int n);

GradedWindow fixed_subalgebra(const AffAlgebra& a, const TwistedAutomorphism& s, int n);

struct WindowGRReport {
  CheckItem gr1, gr2, gr3, gr4, gr5, tame;
  int window_used = 0;
};

/// GR1-GR4 evidence on the window, GR5 from the attached presentation, and a
/// window-scoped tameness check.  A window pass is evidence, not proof.
WindowGRReport window_check_GR(const GradedWindow& w);

/// Closure of the nonisotropic root spaces under in-window brackets.
std::vector<SVec> window_core(const GradedWindow& w);

/// Elements of the window whose bracket with every vector of s vanishes.  The
/// constraints are evaluated with the closed-form bracket, so they are exact
/// even when a bracket lands outside the window.
std::vector<SVec> window_centralizer(const GradedWindow& w, const std::vector<SVec>& s);

}  // namespace grla
