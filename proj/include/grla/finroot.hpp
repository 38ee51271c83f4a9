#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grla/linalg.hpp"

namespace grla {

enum class FinFamily { A, B, C, D, E, F, G, BC };

std::string family_name(FinFamily f);
std::optional<FinFamily> family_from_name(const std::string& s);

struct InvalidType : std::runtime_error {
  explicit InvalidType(const std::string& what) : std::runtime_error(what) {}
};

struct NotARootSystem : std::runtime_error {
  explicit NotARootSystem(const std::string& what) : std::runtime_error(what) {}
};

using FinType = std::pair<FinFamily, int>;

/// Finite root system given by its nonzero roots (sorted, deduplicated) and
/// a positive-definite Gram matrix on the ambient space.
struct FinRootSystem {
  size_t ambient_dim = 0;
  QMat gram;
  std::vector<QVec> roots;
  std::optional<FinType> type_label;
};

/// Standard realization in simple-root coordinates.  Supported pairs:
/// A r>=1, B r>=2, C r>=3, D r>=4, E 6..8, F 4, G 2, BC r>=1; rank <= 8.
FinRootSystem build_finroot(FinFamily family, int rank);

/// Reflection of beta in the hyperplane of alpha; (alpha, alpha) != 0.
QVec reflect_fin(const QVec& beta, const QVec& alpha, const QMat& gram);

/// Validates closure axioms, then identifies the isomorphism type of an
/// irreducible finite root system (including non-reduced BC).
FinType classify_finroot(const std::vector<QVec>& roots, const QMat& gram);

/// Roots whose half is not a root.
std::vector<QVec> indivisible(const FinRootSystem& f);

}  // namespace grla
