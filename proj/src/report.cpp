#include "grla/report.hpp"

#include <sstream>

namespace grla {

namespace {

Json check_json(const std::string& name, const CheckItem& c) {
  Json j;
  j["name"] = name;
  j["pass"] = c.pass;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

Json check_json(const std::string& name, const AxiomResult& c) {
  Json j;
  j["name"] = name;
  j["pass"] = c.pass;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

Json ivec_json(const IntVec& v) {
  Json j = Json::array();
  for (const BigInt& x : v) j.push_back(x.str());
  return j;
}

Json lattice_json(const IntLattice& l) {
  Json j;
  j["ambient"] = l.ambient_rank();
  j["rank"] = l.rank();
  Json rows = Json::array();
  for (size_t i = 0; i < l.basis().rows(); ++i) rows.push_back(ivec_json(l.basis().row(i)));
  j["basis"] = rows;
  return j;
}

Json coset_json(const CosetUnion& c) {
  Json j;
  j["ambient"] = c.ambient_rank();
  j["empty"] = c.is_empty();
  Json mod = Json::array();
  for (size_t i = 0; i < c.modulus().basis().rows(); ++i)
    mod.push_back(ivec_json(c.modulus().basis().row(i)));
  j["modulus"] = mod;
  Json res = Json::array();
  for (const IntVec& r : c.residues()) res.push_back(ivec_json(r));
  j["residues"] = res;
  return j;
}

std::string fin_type_name(const FinType& t) {
  return family_name(t.first) + std::to_string(t.second);
}

bool all_pass(const Json& checks) {
  for (const Json& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

Report input_error(const std::string& cmd, const std::string& what) {
  Report r;
  r.data["command"] = cmd;
  r.data["error"] = what;
  r.exit_code = 2;
  return r;
}

}  // namespace

Report report_check_grrs(const GrrsPresentation& g, int window, int string_cap) {
  Report r;
  r.data["command"] = "check-grrs";
  r.data["window"] = window;
  r.data["ambient"] = g.ambient_dim();
  r.data["nullity"] = g.null_rank();
  GrrsReport rep = check_axioms(g, window, string_cap);
  Json checks = Json::array();
  for (size_t i = 0; i < 7; ++i)
    checks.push_back(check_json("R" + std::to_string(i + 1), rep.axiom[i]));
  r.data["checks"] = checks;
  bool pass = all_pass(checks);
  r.data["pass"] = pass;
  r.exit_code = pass ? 0 : 1;
  return r;
}

Report report_decompose_grrs(const GrrsPresentation& g, int window) {
  Report r;
  r.data["command"] = "decompose-grrs";
  r.data["window"] = window;
  DecompositionResult d = decompose(g, window);
  r.data["nullity"] = d.nullity;
  r.data["component_count"] = d.components.size();
  Json comps = Json::array();
  for (size_t i = 0; i < d.components.size(); ++i) {
    const GrrsComponent& c = d.components[i];
    Json cj;
    cj["index"] = i + 1;
    cj["type"] = fin_type_name(c.type);
    cj["rank"] = c.rank;
    cj["normalization"] = c.c.str();
    comps.push_back(cj);
  }
  r.data["components"] = comps;
  r.data["isolated"] = coset_json(d.r_iso);
  r.data["unattached_isotropic"] = coset_json(d.r0_0);
  r.data["pass"] = true;
  r.exit_code = 0;
  return r;
}

Report report_isolated(const GrrsPresentation& g) {
  Report r;
  r.data["command"] = "isolated";
  r.data["isolated"] = coset_json(isolated_roots(g));
  r.data["pass"] = true;
  r.exit_code = 0;
  return r;
}

Report report_check_lie(const StructLieAlgebra& l) {
  Report r;
  r.data["command"] = "check-lie";
  r.data["dim"] = l.dim();
  AlgebraReport a = validate_algebra(l);
  Json checks = Json::array();
  checks.push_back(check_json("antisymmetry", a.antisymmetry));
  checks.push_back(check_json("jacobi", a.jacobi));
  checks.push_back(check_json("form_symmetric", a.form_symmetric));
  checks.push_back(check_json("form_invariant", a.form_invariant));
  checks.push_back(check_json("form_nondegenerate", a.form_nondegenerate));
  checks.push_back(check_json("cartan_abelian", a.cartan_abelian));
  checks.push_back(check_json("ad_diagonalizable", a.ad_diagonalizable));
  std::optional<GRReport> g;
  if (a.all()) {
    g = check_GR(l);
    checks.push_back(check_json("gr1", g->gr1));
    checks.push_back(check_json("gr2", g->gr2));
    checks.push_back(check_json("gr3", g->gr3));
    checks.push_back(check_json("gr4", g->gr4));
    checks.push_back(check_json("gr5", g->gr5));
    checks.push_back(check_json("gr6a", g->gr6a));
    checks.push_back(check_json("gr6b", g->gr6b));
  }
  r.data["checks"] = checks;
  if (g) {
    // Tameness is a property of the algebra, not a defining axiom, so it is
    // reported but does not affect the exit code.
    Json props = Json::array();
    props.push_back(check_json("tame", g->tame));
    r.data["properties"] = props;
  }
  bool pass = all_pass(checks);
  r.data["pass"] = pass;
  r.exit_code = pass ? 0 : 1;
  return r;
}

Report report_decompose_lie(const StructLieAlgebra& l) {
  Report r;
  r.data["command"] = "decompose-lie";
  AlgebraReport a = validate_algebra(l);
  if (!a.all()) return input_error("decompose-lie", "the algebra fails its validity checks");
  IntrinsicDecomposition d = intrinsic_decomposition(make_handle(l));
  r.data["component_count"] = d.components.size();
  Json comps = Json::array();
  for (size_t i = 0; i < d.components.size(); ++i) {
    const IntrinsicComponent& c = d.components[i];
    Json cj;
    cj["index"] = i + 1;
    cj["type"] = fin_type_name(c.type);
    cj["rank"] = c.rank;
    cj["dim"] = c.gi.size();
    cj["core_dim"] = c.gi_core.size();
    cj["isotropic_cartan_dim"] = c.h0.size();
    cj["derivation_dim"] = c.d.size();
    comps.push_back(cj);
  }
  r.data["components"] = comps;
  r.data["orthogonal_remainder_dim"] = d.w.size();
  r.data["isolated_space_count"] = d.isolated.size();
  Json checks = Json::array();
  checks.push_back(check_json("cross_core_commute", d.cross_core_commute));
  checks.push_back(check_json("w_centralizes", d.w_centralizes));
  checks.push_back(check_json("isolated_centralize_core", d.isolated_centralize_core));
  checks.push_back(check_json("cross_bracket_containment", d.cross_bracket_containment));
  r.data["checks"] = checks;
  bool pass = all_pass(checks);
  r.data["pass"] = pass;
  r.exit_code = pass ? 0 : 1;
  return r;
}

namespace {

void window_report_into(Report& r, const GradedWindow& w) {
  r.data["window"] = w.N;
  Json dims = Json::array();
  for (long n = -w.N; n <= w.N; ++n) {
    Json dj;
    dj["degree"] = n;
    dj["dim"] = w.degree_bases[static_cast<size_t>(n + w.N)].size();
    dims.push_back(dj);
  }
  r.data["degree_dims"] = dims;
  r.data["nullity"] = w.pres.null_rank();
  Json checks = Json::array();
  checks.push_back(check_json("jacobi", w.jacobi));
  checks.push_back(check_json("form_invariant", w.invariance));
  checks.push_back(check_json("root_space_orthogonality", w.orthogonality));
  checks.push_back(check_json("bracket_grading", w.grading));
  WindowGRReport g = window_check_GR(w);
  checks.push_back(check_json("gr1", g.gr1));
  checks.push_back(check_json("gr2", g.gr2));
  checks.push_back(check_json("gr3", g.gr3));
  checks.push_back(check_json("gr4", g.gr4));
  checks.push_back(check_json("gr5", g.gr5));
  r.data["checks"] = checks;
  Json props = Json::array();
  props.push_back(check_json("tame", g.tame));
  r.data["properties"] = props;
  bool pass = all_pass(checks);
  r.data["pass"] = pass;
  r.exit_code = pass ? 0 : 1;
}

}  // namespace

Report report_affinize(const StructLieAlgebra& l, int window_radius) {
  Report r;
  r.data["command"] = "affinize";
  AlgebraReport a = validate_algebra(l);
  if (!a.all()) return input_error("affinize", "the base algebra fails its validity checks");
  AffAlgebra aff = make_affine(l);
  window_report_into(r, window(aff, window_radius));
  return r;
}

Report report_fixed_points(const StructLieAlgebra& l, const SMat& omega, int order,
                           int window_radius) {
  Report r;
  r.data["command"] = "fixed-points";
  r.data["order"] = order;
  AlgebraReport a = validate_algebra(l);
  if (!a.all()) return input_error("fixed-points", "the base algebra fails its validity checks");
  AffAlgebra aff = make_affine(l);
  TwistedAutomorphism tw{order, omega, Scalar(1)};
  Json conds = Json::array();
  try {
    tw = make_twisted_automorphism(aff, omega, order);
  } catch (const NotAutomorphism& e) {
    conds.push_back(check_json("automorphism", CheckItem{false, e.what()}));
  } catch (const NotIsometry& e) {
    conds.push_back(check_json("isometry", CheckItem{false, e.what()}));
  } catch (const CartanNotPreserved& e) {
    conds.push_back(check_json("cartan_preserved", CheckItem{false, e.what()}));
  }
  if (conds.empty()) {
    AutoReport c = check_auto_conditions(aff, tw, window_radius);
    conds.push_back(check_json("finite_order", c.finite_order));
    conds.push_back(check_json("automorphism", c.automorphism));
    conds.push_back(check_json("isometry", c.isometry));
    conds.push_back(check_json("cartan_preserved", c.cartan_preserved));
    conds.push_back(check_json("centralizer", c.centralizer));
  }
  r.data["conditions"] = conds;
  if (!all_pass(conds)) {
    r.data["pass"] = false;
    r.exit_code = 1;
    return r;
  }
  TwistedAutomorphism s = make_twisted_automorphism(aff, omega, order);
  window_report_into(r, fixed_subalgebra(aff, s, window_radius));
  return r;
}

namespace {

Json torus_reports_json(const std::vector<LieTorusReport>& reports) {
  Json comps = Json::array();
  for (size_t i = 0; i < reports.size(); ++i) {
    const LieTorusReport& t = reports[i];
    Json cj;
    cj["index"] = i + 1;
    cj["type"] = t.type_label;
    Json checks = Json::array();
    checks.push_back(check_json("lt1", t.lt1));
    checks.push_back(check_json("lt2i", t.lt2i));
    checks.push_back(check_json("lt2ii", t.lt2ii));
    checks.push_back(check_json("lt3", t.lt3));
    checks.push_back(check_json("lt4", t.lt4));
    checks.push_back(check_json("centerless", t.centerless));
    cj["checks"] = checks;
    cj["pass"] = t.pass();
    comps.push_back(cj);
  }
  return comps;
}

}  // namespace

Report report_lie_torus(const InputDocument& doc, int window_radius) {
  Report r;
  r.data["command"] = "lie-torus";
  if (doc.kind == InputKind::grrs) {
    // Grading data only: no algebra to slice.
    ToriGrading t = grading_extraction(*doc.grrs);
    r.data["type"] = t.type_label();
    r.data["support_lattice"] = lattice_json(t.lambda_t);
    r.data["isolated_lattice"] = lattice_json(t.lambda_0);
    r.data["pass"] = true;
    r.exit_code = 0;
    return r;
  }
  std::vector<LieTorusReport> reports;
  if (doc.kind == InputKind::liealg) {
    reports = core_mod_center_pipeline(*doc.algebra);
  } else {
    AffAlgebra aff = make_affine(*doc.algebra);
    GradedWindow w = doc.kind == InputKind::affinize
                         ? window(aff, window_radius)
                         : fixed_subalgebra(
                               aff, make_twisted_automorphism(aff, *doc.omega, doc.order),
                               window_radius);
    r.data["window"] = window_radius;
    reports = core_mod_center_pipeline(w);
  }
  r.data["component_count"] = reports.size();
  r.data["components"] = torus_reports_json(reports);
  bool pass = true;
  for (const LieTorusReport& t : reports) pass = pass && t.pass();
  r.data["pass"] = pass;
  r.exit_code = pass ? 0 : 1;
  return r;
}

Report run_command(const std::string& cmd, const InputDocument& doc, int window, int string_cap) {
  bool grrs_cmd = cmd == "check-grrs" || cmd == "decompose-grrs" || cmd == "isolated";
  if (window <= 0) window = doc.window ? *doc.window : (grrs_cmd ? 2 : 3);
  try {
    if (grrs_cmd) {
      if (!doc.grrs) return input_error(cmd, "this command needs a root-system document");
      if (cmd == "check-grrs") return report_check_grrs(*doc.grrs, window, string_cap);
      if (cmd == "decompose-grrs") return report_decompose_grrs(*doc.grrs, window);
      return report_isolated(*doc.grrs);
    }
    if (cmd == "lie-torus" && doc.kind == InputKind::grrs) return report_lie_torus(doc, window);
    if (!doc.algebra) return input_error(cmd, "this command needs an algebra document");
    if (cmd == "check-lie") return report_check_lie(*doc.algebra);
    if (cmd == "decompose-lie") return report_decompose_lie(*doc.algebra);
    if (cmd == "affinize") return report_affinize(*doc.algebra, window);
    if (cmd == "fixed-points") {
      if (doc.kind != InputKind::fixedpoint)
        return input_error(cmd, "this command needs a fixed-point document (order and omega)");
      return report_fixed_points(*doc.algebra, *doc.omega, doc.order, window);
    }
    if (cmd == "lie-torus") return report_lie_torus(doc, window);
    return input_error(cmd, "unknown command");
  } catch (const WindowTooSmall& e) {
    return input_error(cmd, std::string("window too small: ") + e.what());
  } catch (const NotIndecomposable& e) {
    return input_error(cmd, e.what());
  } catch (const BadPresentation& e) {
    return input_error(cmd, e.what());
  } catch (const UnsupportedOrder& e) {
    return input_error(cmd, e.what());
  }
}

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render_into(const Json& j, const std::string& indent, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !value.empty()) {
        out += indent + key + ":\n";
        render_into(value, indent + "  ", out);
      } else if (value.is_structured()) {
        out += indent + key + ": (none)\n";
      } else {
        out += indent + key + ": " + scalar_text(value) + "\n";
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const Json& item : j) {
      if (item.is_structured()) {
        out += indent + "-\n";
        render_into(item, indent + "  ", out);
      } else {
        out += indent + "- " + scalar_text(item) + "\n";
      }
    }
    return;
  }
  out += indent + scalar_text(j) + "\n";
}

}  // namespace

std::string render_text(const Json& j) {
  std::string out;
  render_into(j, "", out);
  return out;
}

}  // namespace grla
