#include "grla/torus.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace grla {

namespace {

std::string qvec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

long radius_of(const IntVec& v) {
  BigInt r = 0;
  for (const BigInt& x : v) r = std::max(r, BigInt(abs(x)));
  return r.convert_to<long>();
}

/// Exact centralizer-modulo-ideal on a loop window: {x : [x, v] lies in the
/// loop span of the ideal, for every v in s}.  Brackets are evaluated in
/// closed form, including parts that fall outside the window.
std::vector<SVec> exact_centralizer_mod(const GradedWindow& w, const std::vector<SVec>& s,
                                        const std::vector<SVec>& ideal) {
  size_t d = w.dim();
  size_t b = w.alg.base.dim();
  size_t k = ideal.size();
  std::vector<SVec> result;
  bool first = true;
  for (const SVec& vc : s) {
    AffElement v = w.from_coords(vc);
    std::vector<AffElement> cols;
    cols.reserve(d + k);
    for (size_t i = 0; i < d; ++i) {
      SVec e(d);
      e[i] = Scalar(1);
      cols.push_back(aff_bracket(w.from_coords(e), v, w.alg));
    }
    for (const SVec& ic : ideal) cols.push_back(aff_scale(w.from_coords(ic), Scalar(-1)));
    std::set<long> degrees;
    for (const AffElement& c : cols)
      for (const auto& [deg, term] : c.terms) degrees.insert(deg);
    size_t nrows = degrees.size() * b + 2;
    SMat m(nrows, d + k);
    size_t r = 0;
    for (long deg : degrees) {
      for (size_t q = 0; q < b; ++q, ++r)
        for (size_t j = 0; j < cols.size(); ++j) {
          auto it = cols[j].terms.find(deg);
          if (it != cols[j].terms.end()) m.at(r, j) = it->second[q];
        }
    }
    for (size_t j = 0; j < cols.size(); ++j) {
      m.at(r, j) = cols[j].c_coeff;
      m.at(r + 1, j) = cols[j].d_coeff;
    }
    std::vector<SVec> sol;
    for (const SVec& ker : kernel_basis(m)) sol.push_back(SVec(ker.begin(), ker.begin() + d));
    sol = span_basis(sol, d);
    result = first ? std::move(sol) : span_intersect(result, sol, d);
    first = false;
  }
  if (first) {  // empty constraint set: everything centralizes
    for (size_t i = 0; i < d; ++i) {
      SVec e(d);
      e[i] = Scalar(1);
      result.push_back(std::move(e));
    }
  }
  return result;
}

/// Same computation on a finite handle, where brackets are total.
std::vector<SVec> handle_centralizer_mod(const GrlaHandle& h, const std::vector<SVec>& s,
                                         const std::vector<SVec>& ideal) {
  size_t d = h.dim;
  size_t k = ideal.size();
  std::vector<SVec> result;
  bool first = true;
  for (const SVec& v : s) {
    SMat m(d, d + k);
    for (size_t i = 0; i < d; ++i) {
      SVec e(d);
      e[i] = Scalar(1);
      auto br = h.bracket(e, v);
      if (!br) continue;  // finite handles never truncate
      for (size_t q = 0; q < d; ++q) m.at(q, i) = (*br)[q];
    }
    for (size_t j = 0; j < k; ++j)
      for (size_t q = 0; q < d; ++q) m.at(q, d + j) = -ideal[j][q];
    std::vector<SVec> sol;
    for (const SVec& ker : kernel_basis(m)) sol.push_back(SVec(ker.begin(), ker.begin() + d));
    sol = span_basis(sol, d);
    result = first ? std::move(sol) : span_intersect(result, sol, d);
    first = false;
  }
  if (first) {
    for (size_t i = 0; i < d; ++i) {
      SVec e(d);
      e[i] = Scalar(1);
      result.push_back(std::move(e));
    }
  }
  return result;
}

std::vector<SVec> centralizer_mod(const CoreSlice& c, const std::vector<SVec>& s,
                                  const std::vector<SVec>& ideal) {
  return c.loop ? exact_centralizer_mod(*c.loop, s, ideal)
                : handle_centralizer_mod(c.ambient, s, ideal);
}

struct RootEntry {
  QVec root, dot;
  IntVec lam;
  long radius;
  bool noniso;
  const std::vector<SVec>* space;
};

std::vector<RootEntry> classify_roots(const GrlaHandle& h) {
  std::vector<RootEntry> out;
  for (const auto& [root, space] : h.spaces) {
    QVec rad = project_null(root, h.pres);
    auto lam = h.pres.embed_preimage(rad);
    if (!lam) throw BadPresentation("root has a non-integral radical part");
    QVec dot = vec_sub(root, rad);
    out.push_back({root, std::move(dot), std::move(*lam), radius_of(*h.pres.embed_preimage(rad)),
                   !grrs_form(root, root, h.pres).is_zero(), &space});
  }
  return out;
}

const RootEntry* find_root(const std::vector<RootEntry>& entries, const QVec& root) {
  for (const RootEntry& e : entries)
    if (e.root == root) return &e;
  return nullptr;
}

CoreSlice build_core(const GradedWindow& w, const std::function<bool(const QVec&)>& keep) {
  CoreSlice c{w.handle(), w, {}, {}, {}};
  size_t d = c.ambient.dim;
  std::vector<RootEntry> entries = classify_roots(c.ambient);

  // Isotropic core pieces as sums of brackets of opposite-shifted
  // nonisotropic spaces, using only sources within the given radius.
  auto iso_span = [&](const QVec& zeta, long r) {
    std::vector<SVec> acc;
    for (const RootEntry& alpha : entries) {
      if (!alpha.noniso || alpha.radius > r || !keep(alpha.root)) continue;
      const RootEntry* shifted = find_root(entries, vec_add(alpha.root, zeta));
      if (!shifted || shifted->radius > r) continue;
      const RootEntry* opposite = find_root(entries, vec_scale(alpha.root, Rational(-1)));
      if (!opposite || opposite->radius > r) continue;
      for (const SVec& x : *shifted->space)
        for (const SVec& y : *opposite->space) {
          auto br = c.ambient.bracket(x, y);
          if (br && !is_zero_vec(*br)) acc.push_back(std::move(*br));
        }
    }
    return span_basis(acc, d);
  };

  if (w.N >= 1) {
    for (const RootEntry& zeta : entries) {
      if (zeta.noniso || zeta.radius > w.N - 1) continue;
      if (!same_span(iso_span(zeta.root, w.N - 1), iso_span(zeta.root, w.N), d))
        throw WindowTooSmall("core span at root " + qvec_str(zeta.root) +
                             " has not stabilized between radii " + std::to_string(w.N - 1) +
                             " and " + std::to_string(w.N));
    }
  }

  for (const RootEntry& e : entries) {
    if (e.noniso) {
      if (keep(e.root)) c.pieces.push_back({e.root, *e.space});
    } else {
      std::vector<SVec> span = iso_span(e.root, w.N);
      if (!span.empty()) c.pieces.push_back({e.root, std::move(span)});
    }
  }
  std::vector<SVec> all;
  for (const auto& [root, space] : c.pieces)
    for (const SVec& v : space) all.push_back(v);
  c.all = span_basis(all, d);
  return c;
}

}  // namespace

std::string ToriGrading::type_label() const {
  std::string fam = "?";
  if (dot_system.type_label)
    fam = family_name(dot_system.type_label->first) + std::to_string(dot_system.type_label->second);
  return "(" + fam + ", " + std::to_string(lambda_t.rank()) + ")";
}

ToriGrading grading_extraction(const GrrsPresentation& g) {
  DecompositionResult dec = decompose(g);
  if (dec.components.size() != 1)
    throw NotIndecomposable("presentation splits into " + std::to_string(dec.components.size()) +
                            " components");
  QuotientResult qr = quotient(g);
  if (qr.components.size() != 1) throw NotIndecomposable("quotient is not irreducible");
  ToriGrading t;
  t.dot_system = FinRootSystem{qr.qgram.rows(), qr.qgram, qr.components[0].second,
                               qr.components[0].first};
  t.proj = qr.proj;
  size_t nu = g.null_rank();
  CosetUnion iso = g.isotropic_support();
  CosetUnion isolated = isolated_roots(g);
  CosetUnion attached = iso.setminus(isolated);
  t.lambda_t = attached.is_empty() ? IntLattice(nu) : attached.zspan();
  t.lambda_0 = isolated.is_empty() ? IntLattice(nu) : isolated.zspan();
  t.lambda = t.lambda_t.sum(t.lambda_0);
  return t;
}

CoreSlice core_window(const GradedWindow& w) {
  return build_core(w, [](const QVec&) { return true; });
}

std::vector<SVec> center_of_core(const CoreSlice& c) {
  std::vector<SVec> cent = centralizer_mod(c, c.all, {});
  return span_intersect(c.all, cent, c.ambient.dim);
}

CoreSlice quotient_core(const GradedWindow& w) {
  CoreSlice c = core_window(w);
  c.ideal = center_of_core(c);
  return c;
}

LieTorusReport check_lie_torus(const CoreSlice& q, const ToriGrading& t) {
  LieTorusReport rep;
  rep.type_label = t.type_label();
  rep.window_used = q.loop ? q.loop->N : 0;
  const GrrsPresentation& pres = q.ambient.pres;
  size_t d = q.ambient.dim;
  size_t nu = pres.null_rank();
  std::vector<SVec> ideal = span_basis(q.ideal, d);

  auto dim_mod = [&](const std::vector<SVec>& piece) {
    std::vector<SVec> both = ideal;
    both.insert(both.end(), piece.begin(), piece.end());
    return span_basis(both, d).size() - ideal.size();
  };
  auto in_mod = [&](const std::vector<SVec>& piece, const SVec& v) {
    std::vector<SVec> both = piece;
    both.insert(both.end(), ideal.begin(), ideal.end());
    return vector_in_span(both, v);
  };

  struct Info {
    QVec root, dot;
    IntVec lam, lam_shifted;
    size_t dm;
  };
  std::vector<Info> info;
  for (const auto& [root, space] : q.pieces) {
    QVec rad = project_null(root, pres);
    auto lam = pres.embed_preimage(rad);
    if (!lam) {
      rep.lt1 = {false, "root " + qvec_str(root) + " has a non-integral radical part"};
      return rep;
    }
    info.push_back({root, vec_sub(root, rad), *lam, *lam, dim_mod(space)});
  }

  // Section of the grading: when the nonzero root classes are the integer
  // multiples of one class, shift each lambda so that the class representative
  // sits at lambda = 0.  This regrading leaves LT1-LT3 invariant.
  QVec gen;
  bool have_gen = false;
  for (const Info& g : info) {
    if (is_zero_vec(g.dot)) continue;
    bool ok = true;
    for (const Info& x : info) {
      if (is_zero_vec(x.dot)) continue;
      Rational k;
      bool found = false;
      for (size_t i = 0; i < g.dot.size() && !found; ++i)
        if (!g.dot[i].is_zero()) {
          k = x.dot[i] / g.dot[i];
          found = true;
        }
      if (!found || !k.is_integer() || vec_sub(x.dot, vec_scale(g.dot, k)) != QVec(g.dot.size())) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = g.dot;
      have_gen = true;
      break;
    }
  }
  if (have_gen) {
    // Canonical offset: the smallest observed lambda on the generator class.
    std::optional<IntVec> phi;
    auto better = [](const IntVec& a, const IntVec& b) {
      BigInt sa = 0, sb = 0;
      for (const BigInt& x : a) sa += abs(x);
      for (const BigInt& x : b) sb += abs(x);
      if (sa != sb) return sa < sb;
      return a < b;
    };
    for (const Info& x : info)
      if (x.dot == gen && x.dm > 0 && (!phi || better(x.lam, *phi))) phi = x.lam;
    if (phi)
      for (Info& x : info) {
        if (is_zero_vec(x.dot)) continue;
        Rational k;
        for (size_t i = 0; i < gen.size(); ++i)
          if (!gen[i].is_zero()) {
            k = x.dot[i] / gen[i];
            break;
          }
        for (size_t i = 0; i < nu; ++i) x.lam_shifted[i] = x.lam[i] - k.num() * (*phi)[i];
      }
  }

  // LT1: nonzero classes land in the quotient system, shifted degrees land in
  // the grading lattice, and brackets respect the grading.
  for (const Info& x : info) {
    if (x.dm == 0) continue;
    if (!is_zero_vec(x.dot)) {
      QVec mapped = mat_vec(t.proj, x.dot);
      if (std::find(t.dot_system.roots.begin(), t.dot_system.roots.end(), mapped) ==
          t.dot_system.roots.end()) {
        rep.lt1 = {false, "root class " + qvec_str(x.dot) + " is outside the quotient system"};
        break;
      }
    }
    if (!t.lambda.contains(x.lam_shifted)) {
      rep.lt1 = {false, "degree of root " + qvec_str(x.root) + " is outside the grading lattice"};
      break;
    }
  }
  if (rep.lt1.pass) {
    for (size_t i = 0; i < q.pieces.size() && rep.lt1.pass; ++i)
      for (size_t j = i; j < q.pieces.size() && rep.lt1.pass; ++j) {
        QVec sum = vec_add(q.pieces[i].first, q.pieces[j].first);
        const std::vector<SVec>* target = nullptr;
        for (const auto& [root, space] : q.pieces)
          if (root == sum) target = &space;
        for (const SVec& x : q.pieces[i].second)
          for (const SVec& y : q.pieces[j].second) {
            auto br = q.ambient.bracket(x, y);
            if (!br || is_zero_vec(*br) || vector_in_span(ideal, *br)) continue;
            if (!target || !in_mod(*target, *br)) {
              rep.lt1 = {false, "bracket of roots " + qvec_str(q.pieces[i].first) + " and " +
                                    qvec_str(q.pieces[j].first) + " escapes the grading"};
              break;
            }
          }
      }
  }

  // LT2(i): one-dimensional nonzero-class pieces; indivisible classes present
  // at degree zero.
  for (const Info& x : info)
    if (!is_zero_vec(x.dot) && x.dm > 1) {
      rep.lt2i = {false, "root " + qvec_str(x.root) + " has a " + std::to_string(x.dm) +
                             "-dimensional space"};
      break;
    }
  if (rep.lt2i.pass)
    for (const QVec& r : indivisible(t.dot_system)) {
      bool found = false;
      for (const Info& x : info) {
        if (is_zero_vec(x.dot) || x.dm != 1) continue;
        IntVec zero(nu);
        if (x.lam_shifted == zero && mat_vec(t.proj, x.dot) == r) found = true;
      }
      if (!found) {
        rep.lt2i = {false, "no degree-zero space for an indivisible class"};
        break;
      }
    }

  // LT2(ii): normalized pairs act by Cartan integers.
  for (size_t pi = 0; pi < info.size() && rep.lt2ii.pass; ++pi) {
    const Info& x = info[pi];
    if (is_zero_vec(x.dot) || x.dm != 1) continue;
    QVec neg = vec_scale(x.root, Rational(-1));
    const std::vector<SVec>* opp = nullptr;
    for (const auto& [root, space] : q.pieces)
      if (root == neg) opp = &space;
    if (!opp) {
      rep.lt2ii = {false, "no opposite space for root " + qvec_str(x.root)};
      break;
    }
    auto pick = [&](const std::vector<SVec>& space) -> const SVec* {
      for (const SVec& v : space)
        if (!vector_in_span(ideal, v)) return &v;
      return nullptr;
    };
    const SVec* e = pick(q.pieces[pi].second);
    const SVec* f0 = pick(*opp);
    if (!e || !f0) {
      rep.lt2ii = {false, "no representatives modulo the ideal at root " + qvec_str(x.root)};
      break;
    }
    auto h0 = q.ambient.bracket(*e, *f0);
    std::optional<SVec> he = h0 ? q.ambient.bracket(*h0, *e) : std::optional<SVec>{};
    if (!h0 || !he) continue;  // left the window; no verdict from this pair
    // he = c * e (mod ideal); rescale so the pair acts with eigenvalue 2.
    SMat cols(d, 1 + ideal.size());
    for (size_t r = 0; r < d; ++r) {
      cols.at(r, 0) = (*e)[r];
      for (size_t j = 0; j < ideal.size(); ++j) cols.at(r, 1 + j) = ideal[j][r];
    }
    auto coeff = solve_linear(cols, *he);
    if (!coeff || (*coeff)[0].is_zero()) {
      rep.lt2ii = {false, "no normalized pair at root " + qvec_str(x.root)};
      break;
    }
    SVec h = vec_scale(*h0, Scalar(2) / (*coeff)[0]);
    for (size_t pj = 0; pj < info.size() && rep.lt2ii.pass; ++pj) {
      long c = cartan_int(info[pj].root, x.root, pres);
      for (const SVec& y : q.pieces[pj].second) {
        auto br = q.ambient.bracket(h, y);
        if (!br) continue;
        if (!vector_in_span(ideal, vec_sub(*br, vec_scale(y, Scalar(c))))) {
          rep.lt2ii = {false, "pair at root " + qvec_str(x.root) +
                                  " does not act by the Cartan integer on root " +
                                  qvec_str(info[pj].root)};
          break;
        }
      }
    }
  }

  // LT3: each zero-class piece is spanned by brackets of opposite classes.
  for (size_t pi = 0; pi < info.size() && rep.lt3.pass; ++pi) {
    if (!is_zero_vec(info[pi].dot)) continue;
    std::vector<SVec> acc = ideal;
    for (size_t pj = 0; pj < info.size(); ++pj) {
      if (is_zero_vec(info[pj].dot)) continue;
      QVec rest = vec_sub(info[pi].root, info[pj].root);
      const std::vector<SVec>* other = nullptr;
      for (const auto& [root, space] : q.pieces)
        if (root == rest) other = &space;
      if (!other) continue;
      for (const SVec& a : q.pieces[pj].second)
        for (const SVec& b : *other) {
          auto br = q.ambient.bracket(a, b);
          if (br && !is_zero_vec(*br)) acc.push_back(std::move(*br));
        }
    }
    for (const SVec& z : q.pieces[pi].second)
      if (!vector_in_span(acc, z)) {
        rep.lt3 = {false, "space at root " + qvec_str(info[pi].root) +
                              " exceeds the sum of opposite-class brackets"};
        break;
      }
  }

  // LT4: observed degrees generate the nonisolated support lattice.
  {
    std::vector<IntVec> gens;
    for (const Info& x : info)
      if (x.dm > 0) gens.push_back(x.lam_shifted);
    IntLattice observed = IntLattice::from_generators(nu, IntMat::from_rows(gens, nu));
    if (!(observed == t.lambda_t))
      rep.lt4 = {false, "observed degrees generate a lattice of rank " +
                            std::to_string(observed.rank()) + ", expected rank " +
                            std::to_string(t.lambda_t.rank())};
  }

  // Centerless contract: nothing outside the ideal commutes with the slice.
  {
    std::vector<SVec> cent = span_intersect(q.all, centralizer_mod(q, q.all, ideal), d);
    for (const SVec& v : cent)
      if (!vector_in_span(ideal, v)) {
        rep.centerless = {false, "center of the slice exceeds the ideal"};
        break;
      }
  }
  return rep;
}

std::vector<LieTorusReport> core_mod_center_pipeline(const GradedWindow& w) {
  DecompositionResult dec = decompose(w.pres);
  std::vector<LieTorusReport> out;
  for (const GrrsComponent& comp : dec.components) {
    ToriGrading t = grading_extraction(comp.r);
    CoreSlice slice = build_core(w, [&](const QVec& r) { return grrs_member(r, comp.r); });
    slice.ideal = center_of_core(slice);
    out.push_back(check_lie_torus(slice, t));
  }
  return out;
}

std::vector<LieTorusReport> core_mod_center_pipeline(const StructLieAlgebra& l) {
  GrlaHandle h = make_handle(l);
  DecompositionResult dec = decompose(h.pres);
  std::vector<LieTorusReport> out;
  for (const GrrsComponent& comp : dec.components) {
    ToriGrading t = grading_extraction(comp.r);
    CoreSlice slice{h, std::nullopt, {}, {}, {}};
    std::vector<SVec> zero_acc;
    for (const auto& [root, space] : h.spaces) {
      if (is_zero_vec(root) || grrs_form(root, root, h.pres).is_zero()) continue;
      if (!grrs_member(root, comp.r)) continue;
      slice.pieces.push_back({root, space});
      QVec neg = vec_scale(root, Rational(-1));
      for (const auto& [root2, space2] : h.spaces) {
        if (root2 != neg) continue;
        for (const SVec& x : space)
          for (const SVec& y : space2) {
            auto br = h.bracket(x, y);
            if (br && !is_zero_vec(*br)) zero_acc.push_back(std::move(*br));
          }
      }
    }
    zero_acc = span_basis(zero_acc, h.dim);
    if (!zero_acc.empty())
      slice.pieces.push_back({QVec(h.pres.ambient_dim()), std::move(zero_acc)});
    std::vector<SVec> all;
    for (const auto& [root, space] : slice.pieces)
      for (const SVec& v : space) all.push_back(v);
    slice.all = span_basis(all, h.dim);
    slice.ideal = center_of_core(slice);
    out.push_back(check_lie_torus(slice, t));
  }
  return out;
}

}  // namespace grla
