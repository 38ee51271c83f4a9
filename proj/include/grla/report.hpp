#pragma once

#include <string>

#include "json.hpp"

#include "grla/io.hpp"
#include "grla/torus.hpp"

namespace grla {

/// Order-preserving JSON so reports are byte-identical across runs.
using Json = nlohmann::ordered_json;

/// Result of one subcommand: a structured document plus the process exit
/// code.  0 = all checks pass, 1 = some axiom check failed (the document says
/// which), 2 = the input could not be used.
struct Report {
  Json data;
  int exit_code = 0;
};

Report report_check_grrs(const GrrsPresentation& g, int window, int string_cap);
Report report_decompose_grrs(const GrrsPresentation& g, int window);
Report report_isolated(const GrrsPresentation& g);
Report report_check_lie(const StructLieAlgebra& l);
Report report_decompose_lie(const StructLieAlgebra& l);
Report report_affinize(const StructLieAlgebra& l, int window);
Report report_fixed_points(const StructLieAlgebra& l, const SMat& omega, int order, int window);
Report report_lie_torus(const InputDocument& doc, int window);

/// Dispatches a subcommand name over a parsed document.  Kind mismatches
/// yield exit code 2 with an explanatory document.
Report run_command(const std::string& cmd, const InputDocument& doc, int window, int string_cap);

/// Flat human-readable rendering of a report document; deterministic.
std::string render_text(const Json& j);

}  // namespace grla
