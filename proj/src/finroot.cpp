#include "grla/finroot.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace grla {

std::string family_name(FinFamily f) {
  switch (f) {
    case FinFamily::A: return "A";
    case FinFamily::B: return "B";
    case FinFamily::C: return "C";
    case FinFamily::D: return "D";
    case FinFamily::E: return "E";
    case FinFamily::F: return "F";
    case FinFamily::G: return "G";
    case FinFamily::BC: return "BC";
  }
  return "?";
}

std::optional<FinFamily> family_from_name(const std::string& s) {
  static const std::map<std::string, FinFamily> names = {
      {"A", FinFamily::A}, {"B", FinFamily::B}, {"C", FinFamily::C},  {"D", FinFamily::D},
      {"E", FinFamily::E}, {"F", FinFamily::F}, {"G", FinFamily::G},  {"BC", FinFamily::BC}};
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

QVec reflect_fin(const QVec& beta, const QVec& alpha, const QMat& gram) {
  QVec ga = mat_vec(gram, alpha);
  Rational aa = dot(alpha, ga);
  if (aa.is_zero()) throw DivisionByZero();
  Rational c = Rational(2) * dot(beta, ga) / aa;
  QVec out = beta;
  for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] - c * alpha[i];
  return out;
}

namespace {

// Gram matrix of the simple roots for a reduced irreducible type; BC_r uses
// the underlying reduced system (B_r, or A_1 when r = 1).
QMat simple_gram(FinFamily f, int r) {
  auto chain = [&](std::vector<Rational> len, std::vector<std::pair<int, int>> edges,
                   std::vector<Rational> off) {
    QMat g(len.size(), len.size());
    for (size_t i = 0; i < len.size(); ++i) g.at(i, i) = len[i];
    for (size_t k = 0; k < edges.size(); ++k) {
      auto [i, j] = edges[k];
      g.at(i, j) = off[k];
      g.at(j, i) = off[k];
    }
    return g;
  };
  size_t n = static_cast<size_t>(r);
  std::vector<Rational> len(n, Rational(2));
  std::vector<std::pair<int, int>> edges;
  std::vector<Rational> off;
  switch (f) {
    case FinFamily::A:
      for (int i = 0; i + 1 < r; ++i) edges.emplace_back(i, i + 1), off.emplace_back(-1);
      break;
    case FinFamily::B:
      len[n - 1] = Rational(1);
      for (int i = 0; i + 1 < r; ++i) edges.emplace_back(i, i + 1), off.emplace_back(-1);
      break;
    case FinFamily::C:
      len[n - 1] = Rational(4);
      for (int i = 0; i + 2 < r; ++i) edges.emplace_back(i, i + 1), off.emplace_back(-1);
      edges.emplace_back(r - 2, r - 1), off.emplace_back(-2);
      break;
    case FinFamily::D:
      for (int i = 0; i + 2 < r; ++i) edges.emplace_back(i, i + 1), off.emplace_back(-1);
      edges.emplace_back(r - 3, r - 1), off.emplace_back(-1);
      break;
    case FinFamily::E:
      // Path 0-2-3-4-5(-6)(-7) with node 1 attached to node 3.
      edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}};
      if (r >= 7) edges.emplace_back(5, 6);
      if (r == 8) edges.emplace_back(6, 7);
      off.assign(edges.size(), Rational(-1));
      break;
    case FinFamily::F:
      len = {Rational(2), Rational(2), Rational(1), Rational(1)};
      edges = {{0, 1}, {1, 2}, {2, 3}};
      off = {Rational(-1), Rational(-1), Rational(-1, 2)};
      break;
    case FinFamily::G:
      len = {Rational(2), Rational(6)};
      edges = {{0, 1}};
      off = {Rational(-3)};
      break;
    case FinFamily::BC:
      return simple_gram(r == 1 ? FinFamily::A : FinFamily::B, r);
  }
  return chain(len, edges, off);
}

bool valid_pair(FinFamily f, int r) {
  if (r < 1 || r > 8) return false;
  switch (f) {
    case FinFamily::A: return true;
    case FinFamily::B: return r >= 2;
    case FinFamily::C: return r >= 3;
    case FinFamily::D: return r >= 4;
    case FinFamily::E: return r >= 6;
    case FinFamily::F: return r == 4;
    case FinFamily::G: return r == 2;
    case FinFamily::BC: return true;
  }
  return false;
}

Rational length_sq(const QMat& gram, const QVec& v) { return form_value(gram, v, v); }

}  // namespace

FinRootSystem build_finroot(FinFamily family, int rank) {
  if (!valid_pair(family, rank))
    throw InvalidType(family_name(family) + std::to_string(rank) + " is not supported");
  size_t n = static_cast<size_t>(rank);
  FinRootSystem sys;
  sys.ambient_dim = n;
  sys.gram = simple_gram(family, rank);
  std::vector<QVec> simples;
  for (size_t i = 0; i < n; ++i) {
    QVec e(n);
    e[i] = Rational(1);
    simples.push_back(e);
  }
  // Orbit of the simples under the simple reflections.
  std::set<QVec> roots(simples.begin(), simples.end());
  std::vector<QVec> work(simples);
  while (!work.empty()) {
    QVec v = work.back();
    work.pop_back();
    for (const auto& s : simples) {
      QVec w = reflect_fin(v, s, sys.gram);
      if (roots.insert(w).second) work.push_back(w);
    }
  }
  if (family == FinFamily::BC) {
    Rational shortest = length_sq(sys.gram, *roots.begin());
    for (const auto& v : roots) shortest = std::min(shortest, length_sq(sys.gram, v));
    std::vector<QVec> doubles;
    for (const auto& v : roots)
      if (length_sq(sys.gram, v) == shortest) doubles.push_back(vec_scale(v, Rational(2)));
    roots.insert(doubles.begin(), doubles.end());
  }
  sys.roots.assign(roots.begin(), roots.end());
  sys.type_label = FinType{family, rank};
  return sys;
}

std::vector<QVec> indivisible(const FinRootSystem& f) {
  std::set<QVec> all(f.roots.begin(), f.roots.end());
  std::vector<QVec> out;
  for (const auto& v : f.roots) {
    QVec half = vec_scale(v, Rational(1, 2));
    if (!all.count(half)) out.push_back(v);
  }
  return out;
}

namespace {

std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

// Cartan integer 2(b,a)/(a,a); throws if non-integral or outside [-4,4].
long cartan_entry(const QMat& gram, const QVec& b, const QVec& a) {
  Rational aa = form_value(gram, a, a);
  Rational c = Rational(2) * form_value(gram, b, a) / aa;
  if (c.den() != 1 || c.num() < -4 || c.num() > 4)
    throw NotARootSystem("Cartan integer of " + vec_str(b) + " against " + vec_str(a) +
                         " is " + c.str());
  return static_cast<long>(c.num());
}

FinType classify_reduced(const std::vector<QVec>& simples, const QMat& gram) {
  size_t n = simples.size();
  int r = static_cast<int>(n);
  std::vector<std::vector<long>> cart(n, std::vector<long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) cart[i][j] = cartan_entry(gram, simples[i], simples[j]);
  // Edge multiplicities of the Dynkin diagram.
  std::vector<std::vector<long>> mult(n, std::vector<long>(n));
  std::vector<size_t> degree(n, 0);
  size_t edge_count = 0;
  long max_mult = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      mult[i][j] = mult[j][i] = cart[i][j] * cart[j][i];
      if (mult[i][j] > 0) {
        ++degree[i];
        ++degree[j];
        ++edge_count;
        max_mult = std::max(max_mult, mult[i][j]);
      }
    }
  if (edge_count != n - 1) throw NotARootSystem("Dynkin diagram is not a tree");
  if (max_mult == 3) {
    if (n != 2) throw NotARootSystem("triple edge outside rank 2");
    return {FinFamily::G, 2};
  }
  if (max_mult == 2) {
    if (n == 2) return {FinFamily::B, 2};
    Rational lmax = form_value(gram, simples[0], simples[0]), lmin = lmax;
    for (const auto& s : simples) {
      Rational l = form_value(gram, s, s);
      lmax = std::max(lmax, l);
      lmin = std::min(lmin, l);
    }
    size_t n_short = 0;
    for (const auto& s : simples)
      if (form_value(gram, s, s) == lmin) ++n_short;
    if (n == 4 && n_short == 2) return {FinFamily::F, 4};
    if (n_short == 1) return {FinFamily::B, r};
    if (n_short == n - 1) return {FinFamily::C, r};
    throw NotARootSystem("unrecognized multiply-laced diagram");
  }
  // Simply laced: path or one branch node.
  size_t branches = 0, branch = 0;
  for (size_t i = 0; i < n; ++i) {
    if (degree[i] > 3) throw NotARootSystem("diagram node of degree > 3");
    if (degree[i] == 3) {
      ++branches;
      branch = i;
    }
  }
  if (branches == 0) return {FinFamily::A, r};
  if (branches > 1) throw NotARootSystem("more than one branch node");
  std::vector<int> tails;
  for (size_t start = 0; start < n; ++start) {
    if (mult[branch][start] == 0) continue;
    int len = 1;
    size_t prev = branch, cur = start;
    for (;;) {
      size_t next = n;
      for (size_t j = 0; j < n; ++j)
        if (j != prev && mult[cur][j] > 0) next = j;
      if (next == n) break;
      prev = cur;
      cur = next;
      ++len;
    }
    tails.push_back(len);
  }
  std::sort(tails.begin(), tails.end());
  if (tails.size() != 3) throw NotARootSystem("bad branch structure");
  if (tails[0] == 1 && tails[1] == 1) return {FinFamily::D, r};
  if (tails[0] == 1 && tails[1] == 2 && tails[2] >= 2 && tails[2] <= 4) return {FinFamily::E, r};
  throw NotARootSystem("unrecognized simply-laced diagram");
}

}  // namespace

FinType classify_finroot(const std::vector<QVec>& roots, const QMat& gram) {
  if (roots.empty()) throw NotARootSystem("no roots");
  std::set<QVec> all(roots.begin(), roots.end());
  size_t dim = roots[0].size();
  for (const auto& v : roots) {
    if (v.size() != dim) throw DimensionMismatch("root dimensions differ");
    if (is_zero_vec(v)) throw NotARootSystem("zero vector listed as root");
    if (form_value(gram, v, v) <= Rational(0))
      throw NotARootSystem("root of nonpositive length " + vec_str(v));
    QVec neg = vec_scale(v, Rational(-1));
    if (!all.count(neg)) throw NotARootSystem("negation missing for " + vec_str(v));
  }
  for (const auto& a : roots)
    for (const auto& b : roots) {
      cartan_entry(gram, b, a);
      if (!all.count(reflect_fin(b, a, gram)))
        throw NotARootSystem("reflection of " + vec_str(b) + " in " + vec_str(a) +
                             " is not a root");
    }
  // Irreducibility: roots connected under non-orthogonality.
  {
    std::vector<char> seen(roots.size(), 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < roots.size(); ++j)
        if (!seen[j] && !form_value(gram, roots[i], roots[j]).is_zero()) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(roots.size()))
      throw NotARootSystem("root system is not irreducible");
  }
  std::vector<QVec> ind;
  bool reduced = true;
  for (const auto& v : roots) {
    if (all.count(vec_scale(v, Rational(1, 2)))) {
      reduced = false;
      continue;
    }
    ind.push_back(v);
  }
  // Generic functional with weights (1, t, t^2, ...): raise t until no root
  // is annihilated, then split positives and extract the base.
  std::vector<QVec> pos;
  for (long t = 1;; ++t) {
    pos.clear();
    bool generic = true;
    for (const auto& v : ind) {
      Rational f(0), w(1);
      for (size_t i = 0; i < dim; ++i) {
        f = f + w * v[i];
        w = w * Rational(t);
      }
      if (f.is_zero()) {
        generic = false;
        break;
      }
      if (f > Rational(0)) pos.push_back(v);
    }
    if (generic) break;
  }
  std::set<QVec> pos_set(pos.begin(), pos.end());
  std::vector<QVec> simples;
  for (const auto& v : pos) {
    bool decomposable = false;
    for (const auto& u : pos) {
      if (decomposable) break;
      QVec rest = vec_sub(v, u);
      if (!is_zero_vec(rest) && pos_set.count(rest)) decomposable = true;
    }
    if (!decomposable) simples.push_back(v);
  }
  std::sort(simples.begin(), simples.end());
  FinType t = classify_reduced(simples, gram);
  if (!reduced) {
    if (t.first == FinFamily::B || (t.first == FinFamily::A && t.second == 1))
      return {FinFamily::BC, t.second};
    throw NotARootSystem("divisible roots outside type BC");
  }
  return t;
}

}  // namespace grla
