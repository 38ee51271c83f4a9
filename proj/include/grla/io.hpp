#pragma once

#include <optional>
#include <string>

#include "grla/affine.hpp"

namespace grla {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

enum class InputKind { grrs, liealg, affinize, fixedpoint };

std::string kind_name(InputKind k);

/// A parsed description file: a root-system presentation, or a structure-
/// constant algebra optionally paired with a finite-order base automorphism.
struct InputDocument {
  InputKind kind = InputKind::grrs;
  std::optional<GrrsPresentation> grrs;
  std::optional<StructLieAlgebra> algebra;
  int order = 1;                 // fixedpoint: order of the automorphism
  std::optional<SMat> omega;     // fixedpoint: base map, column convention
  std::optional<int> window;     // per-file default window radius
};

/// Parses the line-oriented description format.  Throws ParseError on lexical
/// problems, SchemaError on structural ones, BadScalar on malformed numbers;
/// messages carry the line number.
InputDocument parse_input(const std::string& text);

InputDocument load_input(const std::string& path);

/// Canonical text form; parse(serialize(parse(x))) == parse(x).
std::string serialize_input(const InputDocument& doc);

}  // namespace grla
