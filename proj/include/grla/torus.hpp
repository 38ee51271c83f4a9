#pragma once

#include "grla/affine.hpp"

namespace grla {

struct WindowTooSmall : std::runtime_error {
  explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};
struct NotIndecomposable : std::runtime_error {
  explicit NotIndecomposable(const std::string& what) : std::runtime_error(what) {}
};

/// Grading data of an indecomposable presentation: the irreducible quotient
/// root system plus the lattices spanned by the nonisolated and isolated
/// isotropic supports.
struct ToriGrading {
  FinRootSystem dot_system;
  QMat proj;  // ambient presentation coordinates -> quotient coordinates
  IntLattice lambda_t = IntLattice(0);
  IntLattice lambda_0 = IntLattice(0);
  IntLattice lambda = IntLattice(0);

  /// "(A1, 1)": quotient type and rank of the nonisolated support lattice.
  std::string type_label() const;
};

ToriGrading grading_extraction(const GrrsPresentation& g);

/// Core slice of a root-graded algebra: per-root bases in ambient
/// coordinates, with an optional central ideal to quotient out.  `loop` is
/// set when the ambient algebra is a loop window, enabling exact (untruncated)
/// centralizer constraints.
struct CoreSlice {
  GrlaHandle ambient;
  std::optional<GradedWindow> loop;
  std::vector<std::pair<QVec, std::vector<SVec>>> pieces;
  std::vector<SVec> all;
  std::vector<SVec> ideal;
};

/// Core spans per root: nonisotropic root spaces verbatim, and each isotropic
/// piece as the span of brackets of opposite-shifted nonisotropic spaces.
/// Throws WindowTooSmall unless those spans coincide when computed from radii
/// N-1 and N.
CoreSlice core_window(const GradedWindow& w);

/// Elements of the core slice commuting with all of it; brackets are
/// evaluated in closed form, so no candidate is guessed.
std::vector<SVec> center_of_core(const CoreSlice& c);

/// The core with its center installed as the ideal.
CoreSlice quotient_core(const GradedWindow& w);

struct LieTorusReport {
  CheckItem lt1, lt2i, lt2ii, lt3, lt4, centerless;
  std::string type_label;
  int window_used = 0;
  bool pass() const {
    return lt1.pass && lt2i.pass && lt2ii.pass && lt3.pass && lt4.pass && centerless.pass;
  }
};

/// Axioms of a Lie torus, checked on the slice modulo its ideal.  Verdicts
/// from a bounded window are evidence, not proof.
LieTorusReport check_lie_torus(const CoreSlice& q, const ToriGrading& t);

/// decompose -> per-component core / center / quotient -> axiom checks.
std::vector<LieTorusReport> core_mod_center_pipeline(const GradedWindow& w);
std::vector<LieTorusReport> core_mod_center_pipeline(const StructLieAlgebra& l);

}  // namespace grla
