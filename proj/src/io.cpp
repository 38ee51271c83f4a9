#include "grla/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace grla {

namespace {

struct Line {
  size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> lex(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail_parse(size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_schema(size_t line, const std::string& msg) {
  throw SchemaError("line " + std::to_string(line) + ": " + msg);
}

bool integer_token(const std::string& t) {
  if (t.empty()) return false;
  size_t i = t[0] == '-' ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

Rational parse_rational(size_t line, const std::string& tok) {
  size_t slash = tok.find('/');
  std::string ns = slash == std::string::npos ? tok : tok.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : tok.substr(slash + 1);
  if (!integer_token(ns) || !integer_token(ds))
    throw BadScalar("line " + std::to_string(line) + ": \"" + tok + "\"");
  BigInt den(ds);
  if (den == 0) throw BadScalar("line " + std::to_string(line) + ": \"" + tok + "\" divides by zero");
  return Rational(BigInt(ns), den);
}

BigInt parse_integer(size_t line, const std::string& tok) {
  if (!integer_token(tok)) throw BadScalar("line " + std::to_string(line) + ": \"" + tok + "\"");
  return BigInt(tok);
}

Scalar parse_scalar(size_t line, const std::string& tok, int order) {
  if (tok.find('z') == std::string::npos) return Scalar(parse_rational(line, tok));
  try {
    return Scalar::parse(tok, order);
  } catch (const std::exception&) {
    throw BadScalar("line " + std::to_string(line) + ": \"" + tok + "\"");
  }
}

QVec parse_qvec(const Line& l, size_t from, size_t expect) {
  if (l.tokens.size() - from != expect)
    fail_parse(l.number, "expected " + std::to_string(expect) + " entries after \"" +
                             l.tokens[0] + "\"");
  QVec v(expect);
  for (size_t i = 0; i < expect; ++i) v[i] = parse_rational(l.number, l.tokens[from + i]);
  return v;
}

SVec parse_svec(const Line& l, size_t from, size_t expect, int order) {
  if (l.tokens.size() - from != expect)
    fail_parse(l.number, "expected " + std::to_string(expect) + " entries after \"" +
                             l.tokens[0] + "\"");
  SVec v(expect);
  for (size_t i = 0; i < expect; ++i) v[i] = parse_scalar(l.number, l.tokens[from + i], order);
  return v;
}

IntVec parse_ivec(const Line& l, size_t from, size_t expect) {
  if (l.tokens.size() - from != expect)
    fail_parse(l.number, "expected " + std::to_string(expect) + " entries after \"" +
                             l.tokens[0] + "\"");
  IntVec v(expect);
  for (size_t i = 0; i < expect; ++i) v[i] = parse_integer(l.number, l.tokens[from + i]);
  return v;
}

long parse_count(const Line& l, const char* what) {
  if (l.tokens.size() != 2) fail_parse(l.number, std::string(what) + " takes one value");
  if (!integer_token(l.tokens[1])) fail_parse(l.number, std::string(what) + " must be an integer");
  return std::stol(l.tokens[1]);
}

InputDocument parse_grrs(const std::vector<Line>& lines, size_t start) {
  std::optional<size_t> ambient, nullity;
  std::vector<QVec> gram_rows, embed_rows;
  struct FamilyDraft {
    size_t line;
    std::optional<QVec> base;
    std::vector<IntVec> modulus, residues;
  };
  std::vector<FamilyDraft> fams;
  bool in_family = false;
  size_t last_line = lines.empty() ? 1 : lines.back().number;
  for (size_t i = start; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& key = l.tokens[0];
    if (key == "ambient") {
      ambient = static_cast<size_t>(parse_count(l, "ambient"));
    } else if (key == "nullity") {
      nullity = static_cast<size_t>(parse_count(l, "nullity"));
    } else if (key == "gram") {
      if (!ambient) fail_schema(l.number, "gram before ambient");
      gram_rows.push_back(parse_qvec(l, 1, *ambient));
    } else if (key == "embed") {
      if (!ambient || !nullity) fail_schema(l.number, "embed before ambient/nullity");
      embed_rows.push_back(parse_qvec(l, 1, *nullity));
    } else if (key == "family") {
      if (in_family) fail_parse(l.number, "nested family block");
      in_family = true;
      fams.push_back({l.number, std::nullopt, {}, {}});
    } else if (key == "base") {
      if (!in_family || !ambient) fail_parse(l.number, "base outside a family block");
      fams.back().base = parse_qvec(l, 1, *ambient);
    } else if (key == "modulus") {
      if (!in_family || !nullity) fail_parse(l.number, "modulus outside a family block");
      fams.back().modulus.push_back(parse_ivec(l, 1, *nullity));
    } else if (key == "residue") {
      if (!in_family || !nullity) fail_parse(l.number, "residue outside a family block");
      fams.back().residues.push_back(parse_ivec(l, 1, *nullity));
    } else if (key == "end") {
      if (!in_family) fail_parse(l.number, "end outside a family block");
      in_family = false;
    } else {
      fail_parse(l.number, "unknown field \"" + key + "\"");
    }
  }
  if (in_family) fail_parse(last_line, "unterminated family block");
  if (!ambient) fail_schema(last_line, "missing ambient");
  if (!nullity) fail_schema(last_line, "missing nullity");
  if (gram_rows.size() != *ambient) fail_schema(last_line, "gram must have one row per dimension");
  if (embed_rows.size() != *ambient) fail_schema(last_line, "embed must have one row per dimension");
  QMat gram(*ambient, *ambient);
  for (size_t i = 0; i < *ambient; ++i)
    for (size_t j = 0; j < *ambient; ++j) gram.at(i, j) = gram_rows[i][j];
  if (!gram.is_symmetric()) fail_schema(last_line, "gram matrix is not symmetric");
  QMat embed(*ambient, *nullity);
  for (size_t i = 0; i < *ambient; ++i)
    for (size_t j = 0; j < *nullity; ++j) embed.at(i, j) = embed_rows[i][j];
  if (fams.empty()) fail_schema(last_line, "no families");
  std::vector<GrrsFamily> families;
  for (const FamilyDraft& f : fams) {
    if (!f.base) fail_schema(f.line, "family without a base");
    if (f.residues.empty()) fail_schema(f.line, "family without residues");
    IntLattice mod = IntLattice::from_generators(*nullity,
                                                 IntMat::from_rows(f.modulus, *nullity));
    families.push_back({*f.base, CosetUnion(std::move(mod), f.residues)});
  }
  InputDocument doc;
  doc.kind = InputKind::grrs;
  try {
    doc.grrs.emplace(*ambient, std::move(gram), std::move(embed), std::move(families));
  } catch (const std::exception& e) {
    fail_schema(last_line, e.what());
  }
  return doc;
}

InputDocument parse_algebra(const std::vector<Line>& lines, size_t start, InputKind kind) {
  std::optional<size_t> dim;
  std::vector<std::string> labels;
  std::vector<std::string> cartan_labels;
  std::vector<SVec> form_rows, omega_rows;
  struct BracketDraft {
    size_t line;
    std::string a, b;
    SVec value;
  };
  std::vector<BracketDraft> brackets;
  std::optional<int> window;
  int order = 1;
  bool have_order = false;
  size_t last_line = lines.empty() ? 1 : lines.back().number;
  // The automorphism order fixes which root of unity "z" denotes, so find it
  // before parsing any scalar entries.
  if (kind == InputKind::fixedpoint)
    for (size_t i = start; i < lines.size(); ++i)
      if (lines[i].tokens[0] == "order") {
        order = static_cast<int>(parse_count(lines[i], "order"));
        have_order = true;
        if (order < 1) fail_schema(lines[i].number, "order must be positive");
      }
  for (size_t i = start; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& key = l.tokens[0];
    if (key == "dim") {
      dim = static_cast<size_t>(parse_count(l, "dim"));
    } else if (key == "labels") {
      labels.assign(l.tokens.begin() + 1, l.tokens.end());
    } else if (key == "cartan") {
      cartan_labels.assign(l.tokens.begin() + 1, l.tokens.end());
    } else if (key == "form") {
      if (!dim) fail_schema(l.number, "form before dim");
      form_rows.push_back(parse_svec(l, 1, *dim, order));
    } else if (key == "bracket") {
      if (!dim) fail_schema(l.number, "bracket before dim");
      if (l.tokens.size() != 3 + *dim)
        fail_parse(l.number, "bracket takes two labels and " + std::to_string(*dim) +
                                 " coefficients");
      brackets.push_back({l.number, l.tokens[1], l.tokens[2], parse_svec(l, 3, *dim, order)});
    } else if (key == "window") {
      window = static_cast<int>(parse_count(l, "window"));
    } else if (key == "order" && kind == InputKind::fixedpoint) {
      // consumed in the pre-scan
    } else if (key == "omega" && kind == InputKind::fixedpoint) {
      if (!dim) fail_schema(l.number, "omega before dim");
      omega_rows.push_back(parse_svec(l, 1, *dim, order));
    } else {
      fail_parse(l.number, "unknown field \"" + key + "\"");
    }
  }
  if (!dim) fail_schema(last_line, "missing dim");
  if (labels.size() != *dim) fail_schema(last_line, "labels must name every basis vector");
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) fail_schema(last_line, "duplicate label \"" + labels[i] + "\"");
  auto index_of = [&](size_t line, const std::string& name) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) fail_schema(line, "unknown label \"" + name + "\"");
    return static_cast<size_t>(it - labels.begin());
  };
  if (form_rows.size() != *dim) fail_schema(last_line, "form must have one row per dimension");
  SMat form(*dim, *dim);
  for (size_t i = 0; i < *dim; ++i)
    for (size_t j = 0; j < *dim; ++j) form.at(i, j) = form_rows[i][j];
  if (!form.is_symmetric()) fail_schema(last_line, "form matrix is not symmetric");
  std::vector<size_t> cartan;
  for (const std::string& c : cartan_labels) cartan.push_back(index_of(last_line, c));
  InputDocument doc;
  doc.kind = kind;
  doc.window = window;
  doc.algebra.emplace(labels, std::move(form), std::move(cartan));
  for (const BracketDraft& b : brackets)
    doc.algebra->set_bracket(index_of(b.line, b.a), index_of(b.line, b.b), b.value);
  if (kind == InputKind::fixedpoint) {
    if (!have_order) fail_schema(last_line, "missing order");
    if (omega_rows.size() != *dim) fail_schema(last_line, "omega must have one row per dimension");
    SMat omega(*dim, *dim);
    for (size_t i = 0; i < *dim; ++i)
      for (size_t j = 0; j < *dim; ++j) omega.at(i, j) = omega_rows[i][j];
    doc.order = order;
    doc.omega = std::move(omega);
  }
  return doc;
}

}  // namespace

std::string kind_name(InputKind k) {
  switch (k) {
    case InputKind::grrs: return "grrs";
    case InputKind::liealg: return "liealg";
    case InputKind::affinize: return "affinize";
    case InputKind::fixedpoint: return "fixedpoint";
  }
  return "?";
}

InputDocument parse_input(const std::string& text) {
  std::vector<Line> lines = lex(text);
  if (lines.empty()) throw ParseError("line 1: empty document");
  const Line& head = lines[0];
  if (head.tokens[0] != "kind" || head.tokens.size() != 2)
    fail_parse(head.number, "the first field must be \"kind\"");
  const std::string& k = head.tokens[1];
  if (k == "grrs") return parse_grrs(lines, 1);
  if (k == "liealg") return parse_algebra(lines, 1, InputKind::liealg);
  if (k == "affinize") return parse_algebra(lines, 1, InputKind::affinize);
  if (k == "fixedpoint") return parse_algebra(lines, 1, InputKind::fixedpoint);
  fail_parse(head.number, "unknown kind \"" + k + "\"");
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

namespace {

std::string join_qvec(const QVec& v) {
  std::string s;
  for (const Rational& x : v) s += " " + x.str();
  return s;
}

std::string join_ivec(const IntVec& v) {
  std::string s;
  for (const BigInt& x : v) s += " " + x.str();
  return s;
}

std::string join_svec(const SVec& v) {
  std::string s;
  for (const Scalar& x : v) s += " " + x.str();
  return s;
}

}  // namespace

std::string serialize_input(const InputDocument& doc) {
  std::string out = "kind " + kind_name(doc.kind) + "\n";
  if (doc.kind == InputKind::grrs) {
    const GrrsPresentation& g = *doc.grrs;
    out += "ambient " + std::to_string(g.ambient_dim()) + "\n";
    out += "nullity " + std::to_string(g.null_rank()) + "\n";
    for (size_t i = 0; i < g.ambient_dim(); ++i) out += "gram" + join_qvec(g.gram().row(i)) + "\n";
    for (size_t i = 0; i < g.ambient_dim(); ++i)
      out += "embed" + join_qvec(g.embed().row(i)) + "\n";
    for (const GrrsFamily& f : g.families()) {
      out += "family\n";
      out += "base" + join_qvec(f.base) + "\n";
      const IntMat& basis = f.support.modulus().basis();
      for (size_t i = 0; i < basis.rows(); ++i) out += "modulus" + join_ivec(basis.row(i)) + "\n";
      for (const IntVec& r : f.support.residues()) out += "residue" + join_ivec(r) + "\n";
      out += "end\n";
    }
    return out;
  }
  const StructLieAlgebra& a = *doc.algebra;
  out += "dim " + std::to_string(a.dim()) + "\n";
  out += "labels";
  for (const std::string& l : a.labels()) out += " " + l;
  out += "\ncartan";
  for (size_t i : a.cartan()) out += " " + a.labels()[i];
  out += "\n";
  for (size_t i = 0; i < a.dim(); ++i) out += "form" + join_svec(a.form_matrix().row(i)) + "\n";
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = i + 1; j < a.dim(); ++j)
      if (!is_zero_vec(a.basis_bracket(i, j)))
        out += "bracket " + a.labels()[i] + " " + a.labels()[j] +
               join_svec(a.basis_bracket(i, j)) + "\n";
  if (doc.kind == InputKind::fixedpoint) {
    out += "order " + std::to_string(doc.order) + "\n";
    for (size_t i = 0; i < a.dim(); ++i) out += "omega" + join_svec(doc.omega->row(i)) + "\n";
  }
  if (doc.window) out += "window " + std::to_string(*doc.window) + "\n";
  return out;
}

}  // namespace grla
