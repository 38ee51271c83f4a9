#include "grla/grrs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace grla {

namespace {

std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

std::string ivec_str(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

QMat inverse(const QMat& a) {
  size_t n = a.rows();
  QMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Rational(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n) throw DimensionMismatch("matrix is singular");
  QMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

QMat columns(const std::vector<QVec>& cols) {
  size_t d = cols.empty() ? 0 : cols[0].size();
  QMat m(d, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < d; ++i) m.at(i, j) = cols[j][i];
  return m;
}

size_t rank_of(const std::vector<QVec>& rows) {
  if (rows.empty()) return 0;
  QMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return rank(m);
}

}  // namespace

GrrsPresentation::GrrsPresentation(size_t ambient_dim, QMat gram, QMat embed,
                                   std::vector<GrrsFamily> families)
    : dim_(ambient_dim),
      gram_(std::move(gram)),
      embed_(std::move(embed)),
      pinv_(0, 0),
      iso_support_(CosetUnion::empty(embed_.cols())) {
  if (gram_.rows() != dim_ || gram_.cols() != dim_) throw DimensionMismatch("gram size");
  if (!gram_.is_symmetric()) throw NotSymmetric();
  if (embed_.rows() != dim_) throw DimensionMismatch("embed rows");
  size_t nu = embed_.cols();
  // Columns of the embedding must be independent and lie in the radical.
  for (size_t j = 0; j < nu; ++j) {
    QVec col(dim_);
    for (size_t i = 0; i < dim_; ++i) col[i] = embed_.at(i, j);
    if (!is_zero_vec(mat_vec(gram_, col)))
      throw BadPresentation("embedding column outside the radical of the form");
  }
  {
    QMat e = embed_;
    if (rank(e) != nu) throw BadPresentation("embedding is not injective");
  }
  if (nu > 0) {
    // Left inverse (E^T E)^{-1} E^T.
    QMat et = embed_.transposed();
    pinv_ = mat_mul(inverse(mat_mul(et, embed_)), et);
  }
  // Fold isotropic families onto base 0 and merge equal bases.
  std::vector<GrrsFamily> iso, rest;
  for (auto& f : families) {
    if (f.base.size() != dim_) throw DimensionMismatch("family base");
    if (f.support.ambient_rank() != nu) throw DimensionMismatch("family support rank");
    if (f.support.is_empty()) continue;
    if (is_zero_vec(mat_vec(gram_, f.base))) {
      auto r = embed_preimage(f.base);
      if (!r) throw BadPresentation("isotropic family base is not an embedded lattice point");
      iso.push_back({QVec(dim_), f.support.shifted(*r)});
    } else {
      if (grrs_form(f.base, f.base, *this).is_zero())
        throw BadPresentation("isotropic family base outside the radical");
      rest.push_back(std::move(f));
    }
  }
  CosetUnion iso_all = CosetUnion::empty(nu);
  for (const auto& f : iso) iso_all = iso_all.set_union(f.support);
  IntVec zero(nu);
  if (!iso_all.member(zero)) throw BadPresentation("zero root missing");
  iso_support_ = iso_all;
  std::sort(rest.begin(), rest.end(),
            [](const GrrsFamily& a, const GrrsFamily& b) { return a.base < b.base; });
  std::vector<GrrsFamily> merged;
  for (auto& f : rest) {
    if (!merged.empty() && merged.back().base == f.base)
      merged.back().support = merged.back().support.set_union(f.support);
    else
      merged.push_back(std::move(f));
  }
  families_.push_back({QVec(dim_), iso_support_});
  for (auto& f : merged) {
    noniso_.push_back(families_.size());
    families_.push_back(std::move(f));
  }
}

std::optional<IntVec> GrrsPresentation::embed_preimage(const QVec& x) const {
  size_t nu = embed_.cols();
  if (nu == 0) return is_zero_vec(x) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
  QVec lam = mat_vec(pinv_, x);
  // Verify x is actually in the image and the preimage is integral.
  QVec back = mat_vec(embed_, lam);
  for (size_t i = 0; i < dim_; ++i)
    if (back[i] != x[i]) return std::nullopt;
  IntVec out(nu);
  for (size_t i = 0; i < nu; ++i) {
    if (lam[i].den() != 1) return std::nullopt;
    out[i] = lam[i].num();
  }
  return out;
}

QVec GrrsPresentation::embedded(const IntVec& lambda) const {
  QVec out(dim_);
  for (size_t j = 0; j < embed_.cols(); ++j)
    for (size_t i = 0; i < dim_; ++i) out[i] = out[i] + embed_.at(i, j) * Rational(lambda[j]);
  return out;
}

bool grrs_member(const QVec& x, const GrrsPresentation& g) {
  if (x.size() != g.ambient_dim()) throw DimensionMismatch("grrs_member");
  for (const auto& f : g.families()) {
    auto lam = g.embed_preimage(vec_sub(x, f.base));
    if (lam && f.support.member(*lam)) return true;
  }
  return false;
}

Rational grrs_form(const QVec& x, const QVec& y, const GrrsPresentation& g) {
  return form_value(g.gram(), x, y);
}

long cartan_int(const QVec& beta, const QVec& alpha, const GrrsPresentation& g) {
  Rational aa = grrs_form(alpha, alpha, g);
  if (aa.is_zero()) throw IsotropicDenominator();
  Rational c = Rational(2) * grrs_form(beta, alpha, g) / aa;
  if (c.den() != 1 || c.num() < -4 || c.num() > 4)
    throw CartanViolation("Cartan integer of " + vec_str(beta) + " against " + vec_str(alpha) +
                          " is " + c.str());
  return static_cast<long>(c.num());
}

QVec reflect(const QVec& beta, const QVec& alpha, const GrrsPresentation& g) {
  Rational aa = grrs_form(alpha, alpha, g);
  if (aa.is_zero()) throw IsotropicDenominator();
  Rational c = Rational(2) * grrs_form(beta, alpha, g) / aa;
  QVec out = beta;
  for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] - c * alpha[i];
  return out;
}

std::pair<int, int> root_string(const QVec& beta, const QVec& alpha, const GrrsPresentation& g,
                                int cap) {
  auto at = [&](int n) {
    QVec v = beta;
    for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + Rational(n) * alpha[i];
    return grrs_member(v, g);
  };
  int u = 0;
  while (at(u + 1)) {
    ++u;
    if (u > cap)
      throw StringCapExceeded("string through " + vec_str(beta) + " along " + vec_str(alpha));
  }
  int d = 0;
  while (at(-(d + 1))) {
    ++d;
    if (d > cap)
      throw StringCapExceeded("string through " + vec_str(beta) + " along " + vec_str(alpha));
  }
  for (int n = u + 2; n <= cap; ++n)
    if (at(n))
      throw BrokenString("gap above the string of " + vec_str(beta) + " along " + vec_str(alpha));
  for (int n = d + 2; n <= cap; ++n)
    if (at(-n))
      throw BrokenString("gap below the string of " + vec_str(beta) + " along " + vec_str(alpha));
  long k = cartan_int(beta, alpha, g);
  if (d - u != k)
    throw StringDefect("string of " + vec_str(beta) + " along " + vec_str(alpha) + " has d-u=" +
                       std::to_string(d - u) + " but Cartan integer " + std::to_string(k));
  return {d, u};
}

namespace {

// Union-find over the nonisotropic families, joined by form-nonorthogonality
// of bases; returns component family-index lists sorted by least base.
std::vector<std::vector<size_t>> form_components(const GrrsPresentation& g) {
  const auto& fams = g.families();
  const auto& nn = g.nonisotropic();
  std::vector<size_t> parent(fams.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t a : nn)
    for (size_t b : nn)
      if (a < b && !grrs_form(fams[a].base, fams[b].base, g).is_zero())
        parent[find(a)] = find(b);
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t a : nn) groups[find(a)].push_back(a);
  std::vector<std::vector<size_t>> comps;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end(),
              [&](size_t x, size_t y) { return fams[x].base < fams[y].base; });
    comps.push_back(std::move(members));
  }
  std::sort(comps.begin(), comps.end(), [&](const auto& x, const auto& y) {
    return fams[x[0]].base < fams[y[0]].base;
  });
  return comps;
}

// Isotropic directions reachable as (root of h) - (root of f), in Z^nu
// coordinates; empty when the bases are incompatible mod the embedded lattice.
std::optional<CosetUnion> reach(const GrrsPresentation& g, size_t f, size_t h) {
  const auto& fams = g.families();
  auto c = g.embed_preimage(vec_sub(fams[f].base, fams[h].base));
  if (!c) return std::nullopt;
  IntVec neg(c->size());
  for (size_t i = 0; i < neg.size(); ++i) neg[i] = -(*c)[i];
  return fams[h].support.minkowski(fams[f].support.negate()).shifted(neg);
}

}  // namespace

CosetUnion isolated_roots(const GrrsPresentation& g) {
  CosetUnion iso = g.isotropic_support();
  for (size_t f : g.nonisotropic())
    for (size_t h : g.nonisotropic()) {
      if (iso.is_empty()) break;
      auto r = reach(g, f, h);
      if (r) iso = iso.setminus(*r);
    }
  return iso;
}

GrrsReport check_axioms(const GrrsPresentation& g, int window, int string_cap) {
  GrrsReport rep;
  const auto& fams = g.families();
  size_t nu = g.null_rank();
  // (R1) closure under negation, family against family.
  try {
    for (const auto& f : fams) {
      CosetUnion uncovered = f.support;
      QVec negbase = vec_scale(f.base, Rational(-1));
      for (const auto& h : fams) {
        if (uncovered.is_empty()) break;
        auto c = g.embed_preimage(vec_sub(negbase, h.base));
        if (!c) continue;
        // -(b_f + E l) = b_h + E m with m = c - l.
        uncovered = uncovered.setminus(h.support.negate().shifted(*c));
      }
      if (!uncovered.is_empty()) {
        rep.axiom[0] = {false, "negative of " + vec_str(vec_add(f.base, g.embedded(
                                   uncovered.residues()[0]))) +
                                   " is not a root"};
        break;
      }
    }
  } catch (const IncompatibleModuli& e) {
    rep.axiom[0] = {false, e.what()};
  }
  // (R2) roots span the ambient space.
  {
    std::vector<QVec> rows;
    for (const auto& f : fams) {
      for (const auto& r : f.support.residues()) rows.push_back(vec_add(f.base, g.embedded(r)));
      for (size_t i = 0; i < f.support.modulus().basis().rows(); ++i)
        rows.push_back(g.embedded(f.support.modulus().basis().row(i)));
    }
    if (rank_of(rows) != g.ambient_dim()) rep.axiom[1] = {false, "roots do not span"};
  }
  // (R3) discreteness holds by the family representation.
  // (R4) root strings, exhaustively on the window, walked in Z^nu coordinates.
  {
    struct WRoot {
      size_t fam;
      IntVec lam;
    };
    std::vector<WRoot> roots;
    std::vector<WRoot> noniso;
    IntVec lo(nu, -window), hi(nu, window);
    for (size_t fi = 0; fi < fams.size(); ++fi)
      for (const auto& lam : fams[fi].support.enumerate_window(lo, hi)) {
        roots.push_back({fi, lam});
        if (std::find(g.nonisotropic().begin(), g.nonisotropic().end(), fi) !=
            g.nonisotropic().end())
          noniso.push_back({fi, lam});
      }
    const int cap = string_cap;
    // Preimage offsets per (beta family, alpha family, target family, n).
    std::map<std::tuple<size_t, size_t, size_t, int>, std::optional<IntVec>> offsets;
    auto offset = [&](size_t f, size_t gfam, size_t h, int n) -> const std::optional<IntVec>& {
      auto key = std::make_tuple(f, gfam, h, n);
      auto it = offsets.find(key);
      if (it == offsets.end()) {
        QVec target = fams[f].base;
        for (size_t i = 0; i < target.size(); ++i)
          target[i] = target[i] + Rational(n) * fams[gfam].base[i] - fams[h].base[i];
        it = offsets.emplace(key, g.embed_preimage(target)).first;
      }
      return it->second;
    };
    auto member_at = [&](const WRoot& b, const WRoot& a, int n) {
      IntVec v(nu);
      for (size_t i = 0; i < nu; ++i) v[i] = b.lam[i] + BigInt(n) * a.lam[i];
      for (size_t h = 0; h < fams.size(); ++h) {
        const auto& off = offset(b.fam, a.fam, h, n);
        if (!off) continue;
        IntVec w(nu);
        for (size_t i = 0; i < nu; ++i) w[i] = v[i] + (*off)[i];
        if (fams[h].support.member(w)) return true;
      }
      return false;
    };
    // Cartan integers depend only on the family pair.
    std::map<std::pair<size_t, size_t>, std::optional<long>> cartans;
    for (const auto& b : roots) {
      if (!rep.axiom[3].pass) break;
      for (const auto& a : noniso) {
        auto ck = cartans.find({b.fam, a.fam});
        if (ck == cartans.end()) {
          std::optional<long> k;
          try {
            k = cartan_int(fams[b.fam].base, fams[a.fam].base, g);
          } catch (const CartanViolation&) {
          }
          ck = cartans.emplace(std::make_pair(b.fam, a.fam), k).first;
        }
        auto fail = [&](const std::string& why) {
          QVec bv = vec_add(fams[b.fam].base, g.embedded(b.lam));
          QVec av = vec_add(fams[a.fam].base, g.embedded(a.lam));
          rep.axiom[3] = {false,
                          why + " for beta=" + vec_str(bv) + ", alpha=" + vec_str(av)};
        };
        if (!ck->second) {
          fail("Cartan integer not in Z or out of [-4,4]");
          break;
        }
        int u = 0, d = 0;
        bool capped = false;
        while (member_at(b, a, u + 1)) {
          if (++u > cap) {
            capped = true;
            break;
          }
        }
        while (!capped && member_at(b, a, -(d + 1))) {
          if (++d > cap) {
            capped = true;
            break;
          }
        }
        if (capped) {
          fail("string cap exceeded");
          break;
        }
        bool broken = false;
        for (int n = u + 2; n <= cap && !broken; ++n) broken = member_at(b, a, n);
        for (int n = d + 2; n <= cap && !broken; ++n) broken = member_at(b, a, -n);
        if (broken) {
          fail("broken string");
          break;
        }
        if (d - u != *ck->second) {
          fail("d-u=" + std::to_string(d - u) + " differs from Cartan integer " +
               std::to_string(*ck->second));
          break;
        }
      }
    }
  }
  // (R5) no doubled nonisotropic roots.
  for (size_t f : g.nonisotropic()) {
    if (!rep.axiom[4].pass) break;
    QVec twice = vec_scale(fams[f].base, Rational(2));
    for (size_t h = 0; h < fams.size(); ++h) {
      auto c = g.embed_preimage(vec_sub(twice, fams[h].base));
      if (!c) continue;
      CosetUnion hit = fams[f].support.scale(2).shifted(*c).intersect(fams[h].support);
      if (!hit.is_empty()) {
        rep.axiom[4] = {false, "2*" + vec_str(fams[f].base) + " + embedded " +
                                   ivec_str(hit.residues()[0]) + " is a root"};
        break;
      }
    }
  }
  // (R6) no isolated isotropic roots.
  try {
    CosetUnion iso = isolated_roots(g);
    if (!iso.is_empty())
      rep.axiom[5] = {false, "isolated class at " + ivec_str(iso.residues()[0]) + " mod rank-" +
                                 std::to_string(iso.modulus().rank()) + " modulus"};
  } catch (const IncompatibleModuli& e) {
    rep.axiom[5] = {false, e.what()};
  }
  // (R7) the nonisotropic part is connected.
  {
    auto comps = form_components(g);
    if (comps.empty())
      rep.axiom[6] = {false, "no nonisotropic roots"};
    else if (comps.size() > 1)
      rep.axiom[6] = {false, "decomposes into " + std::to_string(comps.size()) +
                                 " orthogonal parts"};
  }
  return rep;
}

namespace {

// Lattice of x in Z^nu with E x in the Z-span of the given rational rows.
IntLattice pullback_span(const GrrsPresentation& g, const std::vector<QVec>& gens) {
  size_t d = g.ambient_dim(), nu = g.null_rank();
  BigInt den = 1;
  for (const auto& v : gens)
    for (const auto& x : v) den = boost::multiprecision::lcm(den, x.den());
  for (size_t j = 0; j < nu; ++j)
    for (size_t i = 0; i < d; ++i) den = boost::multiprecision::lcm(den, g.embed().at(i, j).den());
  IntMat a(gens.size(), d);
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < d; ++j) a.at(i, j) = gens[i][j].num() * (den / gens[i][j].den());
  IntMat e(nu, d);
  for (size_t i = 0; i < nu; ++i)
    for (size_t j = 0; j < d; ++j)
      e.at(i, j) = g.embed().at(j, i).num() * (den / g.embed().at(j, i).den());
  IntLattice span = IntLattice::from_generators(d, a);
  IntLattice image = IntLattice::from_generators(d, e);
  IntLattice both = span.intersect(image);
  IntMat pre(both.basis().rows(), nu);
  for (size_t i = 0; i < both.basis().rows(); ++i) {
    auto x = int_solve_left(e, both.basis().row(i));
    if (!x) throw BadPresentation("inconsistent embedded lattice");
    for (size_t j = 0; j < nu; ++j) pre.at(i, j) = (*x)[j];
  }
  return IntLattice::from_generators(nu, pre);
}

}  // namespace

QuotientResult quotient(const GrrsPresentation& g) {
  size_t d = g.ambient_dim();
  QMat gmat = g.gram();
  std::vector<QVec> kern = kernel_basis(gmat);
  // Complement the radical with coordinate vectors, greedily.
  std::vector<QVec> comp;
  for (size_t i = 0; i < d && comp.size() + kern.size() < d; ++i) {
    QVec e(d);
    e[i] = Rational(1);
    std::vector<QVec> probe = kern;
    probe.insert(probe.end(), comp.begin(), comp.end());
    probe.push_back(e);
    if (rank_of(probe) == kern.size() + comp.size() + 1) comp.push_back(e);
  }
  std::vector<QVec> cols = comp;
  cols.insert(cols.end(), kern.begin(), kern.end());
  QMat tinv = inverse(columns(cols));
  QuotientResult out{QMat(comp.size(), d), QMat(comp.size(), comp.size()), {}};
  for (size_t i = 0; i < comp.size(); ++i)
    for (size_t j = 0; j < d; ++j) out.proj.at(i, j) = tinv.at(i, j);
  for (size_t i = 0; i < comp.size(); ++i)
    for (size_t j = 0; j < comp.size(); ++j)
      out.qgram.at(i, j) = form_value(gmat, comp[i], comp[j]);
  for (const auto& members : form_components(g)) {
    std::set<QVec> images;
    for (size_t f : members) images.insert(mat_vec(out.proj, g.families()[f].base));
    std::vector<QVec> roots(images.begin(), images.end());
    out.components.push_back({classify_finroot(roots, out.qgram), std::move(roots)});
  }
  return out;
}

int nullity(const GrrsPresentation& g) {
  return static_cast<int>(g.isotropic_support().zspan().rank());
}

DecompositionResult decompose(const GrrsPresentation& g, int window) {
  auto comps = form_components(g);
  if (comps.empty()) throw AxiomViolation("no nonisotropic roots to decompose");
  QuotientResult q = quotient(g);
  CosetUnion r_iso = isolated_roots(g);
  DecompositionResult out{{}, r_iso, r_iso, nullity(g)};
  size_t nu = g.null_rank();
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& members = comps[ci];
    // R_i^0: isotropic directions reachable within the component.
    CosetUnion ri0 = CosetUnion::empty(nu);
    for (size_t f : members)
      for (size_t h : members) {
        auto r = reach(g, f, h);
        if (r) ri0 = ri0.set_union(*r);
      }
    ri0 = ri0.intersect(g.isotropic_support());
    std::vector<GrrsFamily> fams_i;
    fams_i.push_back({QVec(g.ambient_dim()), ri0});
    for (size_t f : members) fams_i.push_back(g.families()[f]);
    GrrsPresentation r_i(g.ambient_dim(), g.gram(), g.embed(), fams_i);
    // (R'_i)^0 = <R_i> n R^0.
    std::vector<QVec> gens;
    for (size_t f : members) {
      const auto& fam = g.families()[f];
      for (const auto& r : fam.support.residues()) gens.push_back(vec_add(fam.base, g.embedded(r)));
      for (size_t i = 0; i < fam.support.modulus().basis().rows(); ++i)
        gens.push_back(g.embedded(fam.support.modulus().basis().row(i)));
    }
    {
      IntLattice z = ri0.zspan();
      for (size_t i = 0; i < z.basis().rows(); ++i) gens.push_back(g.embedded(z.basis().row(i)));
    }
    CosetUnion rpi0 =
        g.isotropic_support().intersect(CosetUnion::lattice(pullback_span(g, gens)));
    std::vector<GrrsFamily> fams_p;
    fams_p.push_back({QVec(g.ambient_dim()), rpi0});
    for (size_t f : members) fams_p.push_back(g.families()[f]);
    GrrsPresentation r_p(g.ambient_dim(), g.gram(), g.embed(), fams_p);
    out.r0_0 = out.r0_0.setminus(rpi0);
    // Re-verify the component axioms.  R2 is exempt: a component is a root
    // system in its own real span, not in the ambient space.
    GrrsReport rep_i = check_axioms(r_i, window);
    for (int ax : {0, 3, 4, 5, 6})
      if (!rep_i.axiom[static_cast<size_t>(ax)].pass)
        throw AxiomViolation("component " + std::to_string(ci + 1) + " fails (R" +
                             std::to_string(ax + 1) + "): " +
                             rep_i.axiom[static_cast<size_t>(ax)].witness);
    GrrsReport rep_p = check_axioms(r_p, window);
    for (int ax : {0, 3, 4, 6})
      if (!rep_p.axiom[static_cast<size_t>(ax)].pass)
        throw AxiomViolation("closure of component " + std::to_string(ci + 1) + " fails (R" +
                             std::to_string(ax + 1) + "): " +
                             rep_p.axiom[static_cast<size_t>(ax)].witness);
    const QVec& gamma = g.families()[members[0]].base;
    Rational c = Rational(2) / grrs_form(gamma, gamma, g);
    out.components.push_back({std::move(r_i), std::move(r_p), q.components[ci].first,
                              q.components[ci].first.second, c});
  }
  return out;
}

std::pair<QMat, std::vector<Rational>> composite_form(const GrrsPresentation& g) {
  auto comps = form_components(g);
  if (comps.empty()) throw AxiomViolation("no nonisotropic roots");
  size_t d = g.ambient_dim();
  std::vector<Rational> cs;
  std::vector<QVec> kern = kernel_basis(g.gram());
  std::vector<QVec> chosen;
  std::vector<size_t> chosen_comp;
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const QVec& gamma = g.families()[comps[ci][0]].base;
    Rational c = Rational(2) / grrs_form(gamma, gamma, g);
    for (size_t f : comps[ci]) {
      const QVec& b = g.families()[f].base;
      if (!(c * grrs_form(b, b, g) > Rational(0)))
        throw IndefiniteComponent("roots " + vec_str(gamma) + " and " + vec_str(b) +
                                  " have incompatible signs");
    }
    cs.push_back(c);
    for (size_t f : comps[ci]) {
      std::vector<QVec> probe = kern;
      probe.insert(probe.end(), chosen.begin(), chosen.end());
      probe.push_back(g.families()[f].base);
      if (rank_of(probe) == kern.size() + chosen.size() + 1) {
        chosen.push_back(g.families()[f].base);
        chosen_comp.push_back(ci);
      }
    }
  }
  if (chosen.size() + kern.size() != d)
    throw AxiomViolation("root bases and radical do not span the ambient space");
  std::vector<QVec> cols = chosen;
  cols.insert(cols.end(), kern.begin(), kern.end());
  QMat t = columns(cols);
  QMat tinv = inverse(t);
  QMat m(d, d);
  for (size_t i = 0; i < chosen.size(); ++i)
    for (size_t j = 0; j < chosen.size(); ++j)
      if (chosen_comp[i] == chosen_comp[j])
        m.at(i, j) = cs[chosen_comp[i]] * form_value(g.gram(), chosen[i], chosen[j]);
  QMat gram_p = mat_mul(tinv.transposed(), mat_mul(m, tinv));
  auto [psd, witness] = is_positive_semidefinite(gram_p);
  if (!psd)
    throw IndefiniteComponent("rescaled form is not positive semidefinite at " +
                              vec_str(*witness));
  return {gram_p, cs};
}

std::vector<QVec> grrs_enumerate_window(const GrrsPresentation& g, const IntVec& lo,
                                        const IntVec& hi) {
  std::vector<QVec> out;
  for (const auto& f : g.families())
    for (const auto& lam : f.support.enumerate_window(lo, hi))
      out.push_back(vec_add(f.base, g.embedded(lam)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QVec project_null(const QVec& x, const GrrsPresentation& g) {
  size_t d = g.ambient_dim();
  std::vector<QVec> kern = kernel_basis(g.gram());
  std::vector<QVec> chosen;
  for (size_t f : g.nonisotropic()) {
    std::vector<QVec> probe = kern;
    probe.insert(probe.end(), chosen.begin(), chosen.end());
    probe.push_back(g.families()[f].base);
    if (rank_of(probe) == kern.size() + chosen.size() + 1)
      chosen.push_back(g.families()[f].base);
  }
  if (chosen.size() + kern.size() != d)
    throw AxiomViolation("root bases and radical do not span the ambient space");
  std::vector<QVec> cols = chosen;
  cols.insert(cols.end(), kern.begin(), kern.end());
  auto xi = solve_linear(columns(cols), x);
  if (!xi) throw DimensionMismatch("project_null input outside the span");
  QVec out(d);
  for (size_t k = 0; k < kern.size(); ++k)
    out = vec_add(out, vec_scale(kern[k], (*xi)[chosen.size() + k]));
  return out;
}

}  // namespace grla
