#include "grla/affine.hpp"

#include <algorithm>
#include <set>

namespace grla {

namespace {

QVec append_coord(QVec v, const Rational& last) {
  v.push_back(last);
  return v;
}

SVec rational_to_scalar_vec(const QVec& v) {
  SVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Scalar(v[i]);
  return out;
}

QVec require_rational_vec(const SVec& v, const char* what) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_rational()) throw BadPresentation(std::string(what) + " is not rational");
    out[i] = v[i].rat();
  }
  return out;
}

/// Shared presentation data of the base algebra.
struct BaseData {
  RootDecomposition rd;
  GrrsPresentation pres;
  std::vector<QVec> coords;
};

BaseData base_data(const AffAlgebra& a) {
  RootDecomposition rd = root_decomposition(a.base);
  auto [pres, coords] = induced_presentation(a.base, rd);
  return {std::move(rd), std::move(pres), std::move(coords)};
}

}  // namespace

AffAlgebra make_affine(StructLieAlgebra base) {
  AlgebraReport rep = validate_algebra(base);
  if (!rep.all()) throw AxiomViolation("base algebra fails validation");
  return AffAlgebra{std::move(base)};
}

void AffElement::prune() {
  for (auto it = terms.begin(); it != terms.end();)
    it = is_zero_vec(it->second) ? terms.erase(it) : std::next(it);
}

AffElement aff_term(long degree, SVec v) {
  AffElement x;
  if (!is_zero_vec(v)) x.terms[degree] = std::move(v);
  return x;
}

AffElement aff_c(const Scalar& coeff) {
  AffElement x;
  x.c_coeff = coeff;
  return x;
}

AffElement aff_d(const Scalar& coeff) {
  AffElement x;
  x.d_coeff = coeff;
  return x;
}

AffElement aff_add(AffElement a, const AffElement& b) {
  for (const auto& [n, v] : b.terms) {
    auto it = a.terms.find(n);
    if (it == a.terms.end())
      a.terms[n] = v;
    else
      it->second = vec_add(it->second, v);
  }
  a.c_coeff += b.c_coeff;
  a.d_coeff += b.d_coeff;
  a.prune();
  return a;
}

AffElement aff_scale(AffElement a, const Scalar& s) {
  for (auto& [n, v] : a.terms) v = vec_scale(v, s);
  a.c_coeff *= s;
  a.d_coeff *= s;
  a.prune();
  return a;
}

AffElement aff_bracket(const AffElement& x, const AffElement& y, const AffAlgebra& a) {
  AffElement out;
  for (const auto& [n, xv] : x.terms)
    for (const auto& [m, yv] : y.terms) {
      SVec br = a.base.bracket(xv, yv);
      if (!is_zero_vec(br)) out = aff_add(std::move(out), aff_term(n + m, std::move(br)));
      if (n + m == 0) {
        Scalar pairing = a.base.pair(xv, yv) * Scalar(n);
        out.c_coeff += pairing;
      }
    }
  // The derivation counts degrees; c is central.
  if (!x.d_coeff.is_zero())
    for (const auto& [m, yv] : y.terms)
      out = aff_add(std::move(out), aff_term(m, vec_scale(yv, x.d_coeff * Scalar(m))));
  if (!y.d_coeff.is_zero())
    for (const auto& [n, xv] : x.terms)
      out = aff_add(std::move(out), aff_term(n, vec_scale(xv, -(y.d_coeff * Scalar(n)))));
  out.prune();
  return out;
}

Scalar aff_form(const AffElement& x, const AffElement& y, const AffAlgebra& a) {
  Scalar out = x.c_coeff * y.d_coeff + y.c_coeff * x.d_coeff;
  for (const auto& [n, xv] : x.terms) {
    auto it = y.terms.find(-n);
    if (it != y.terms.end()) out += a.base.pair(xv, it->second);
  }
  return out;
}

std::string aff_to_string(const AffElement& x, const AffAlgebra& a) {
  std::string s;
  auto join = [&s](const std::string& piece) {
    if (!s.empty()) s += " + ";
    s += piece;
  };
  for (const auto& [n, v] : x.terms) {
    std::string inner;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      if (!inner.empty()) inner += " + ";
      if (v[i] == Scalar(1))
        inner += a.base.labels()[i];
      else
        inner += v[i].str() + "*" + a.base.labels()[i];
    }
    join("(" + inner + ")@t^" + std::to_string(n));
  }
  if (!x.c_coeff.is_zero()) join(x.c_coeff.str() + "*c");
  if (!x.d_coeff.is_zero()) join(x.d_coeff.str() + "*d");
  return s.empty() ? "0" : s;
}

GrrsPresentation aff_root_system(const AffAlgebra& a) {
  BaseData bd = base_data(a);
  size_t s = bd.pres.ambient_dim();
  QMat gram(s + 1, s + 1);
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) gram.at(i, j) = bd.pres.gram().at(i, j);
  QMat embed(s + 1, 1);
  embed.at(s, 0) = Rational(1);
  CosetUnion line = CosetUnion::lattice(IntLattice::full(1));
  std::vector<GrrsFamily> fams;
  for (const QVec& x : bd.coords) fams.push_back({append_coord(x, Rational(0)), line});
  return GrrsPresentation(s + 1, gram, embed, std::move(fams));
}

TwistedAutomorphism make_twisted_automorphism(const AffAlgebra& a, const SMat& omega, int m) {
  size_t n = a.base.dim();
  if (omega.rows() != n || omega.cols() != n)
    throw NotAutomorphism("base map has the wrong shape");
  if (m < 1) throw NotAutomorphism("order must be positive");
  SMat power = SMat::identity(n);
  for (int k = 0; k < m; ++k) power = mat_mul(omega, power);
  if (!(power == SMat::identity(n))) throw NotAutomorphism("base map does not have the given order");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      SVec lhs = mat_vec(omega, a.base.basis_bracket(i, j));
      SVec rhs = a.base.bracket(mat_vec(omega, a.base.basis_vector(i)),
                                mat_vec(omega, a.base.basis_vector(j)));
      if (lhs != rhs)
        throw NotAutomorphism("base map does not preserve the bracket at (" +
                              a.base.labels()[i] + "," + a.base.labels()[j] + ")");
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Scalar lhs = a.base.pair(mat_vec(omega, a.base.basis_vector(i)),
                               mat_vec(omega, a.base.basis_vector(j)));
      if (lhs != a.base.form_matrix().at(i, j))
        throw NotIsometry("base map does not preserve the form at (" + a.base.labels()[i] + "," +
                          a.base.labels()[j] + ")");
    }
  std::vector<SVec> hspan;
  for (size_t h : a.base.cartan()) hspan.push_back(a.base.basis_vector(h));
  for (size_t h : a.base.cartan())
    if (!vector_in_span(hspan, mat_vec(omega, a.base.basis_vector(h))))
      throw CartanNotPreserved("base map moves " + a.base.labels()[h] +
                               " outside the Cartan part");
  Scalar zeta = m == 1 ? Scalar(1) : (m == 2 ? Scalar(-1) : Scalar::root_of_unity(m));
  return TwistedAutomorphism{m, omega, zeta};
}

AffElement twist_apply(const TwistedAutomorphism& s, const AffElement& x) {
  AffElement out;
  out.c_coeff = x.c_coeff;
  out.d_coeff = x.d_coeff;
  for (const auto& [n, v] : x.terms) {
    long e = ((-n) % s.order + s.order) % s.order;
    out.terms[n] = vec_scale(mat_vec(s.omega, v), s.zeta.pow(e));
  }
  out.prune();
  return out;
}

size_t GradedWindow::dim() const {
  size_t d = 2;
  for (const auto& b : degree_bases) d += b.size();
  return d;
}

size_t GradedWindow::degree_offset(long n) const {
  size_t off = 0;
  for (long k = -N; k < n; ++k) off += degree_bases[static_cast<size_t>(k + N)].size();
  return off;
}

std::optional<SVec> GradedWindow::to_coords(const AffElement& x) const {
  SVec out(dim());
  out[dim() - 2] = x.c_coeff;
  out[dim() - 1] = x.d_coeff;
  for (const auto& [n, v] : x.terms) {
    if (n < -N || n > N) return std::nullopt;
    const auto& basis = degree_bases[static_cast<size_t>(n + N)];
    if (basis.empty()) return std::nullopt;
    SMat m(v.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      for (size_t i = 0; i < v.size(); ++i) m.at(i, j) = basis[j][i];
    auto coeff = solve_linear(m, v);
    if (!coeff) return std::nullopt;
    size_t off = degree_offset(n);
    for (size_t j = 0; j < basis.size(); ++j) out[off + j] = (*coeff)[j];
  }
  return out;
}

AffElement GradedWindow::from_coords(const SVec& v) const {
  AffElement x;
  x.c_coeff = v[dim() - 2];
  x.d_coeff = v[dim() - 1];
  size_t off = 0;
  for (long n = -N; n <= N; ++n) {
    const auto& basis = degree_bases[static_cast<size_t>(n + N)];
    SVec term(alg.base.dim());
    bool nonzero = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (v[off + j].is_zero()) continue;
      term = vec_add(term, vec_scale(basis[j], v[off + j]));
      nonzero = true;
    }
    if (nonzero) x.terms[n] = std::move(term);
    off += basis.size();
  }
  x.prune();
  return x;
}

std::optional<SVec> GradedWindow::bracket(const SVec& x, const SVec& y) const {
  return to_coords(aff_bracket(from_coords(x), from_coords(y), alg));
}

Scalar GradedWindow::form(const SVec& x, const SVec& y) const {
  return aff_form(from_coords(x), from_coords(y), alg);
}

GrlaHandle GradedWindow::handle() const {
  auto self = std::make_shared<GradedWindow>(*this);
  GrlaHandle h{.dim = self->dim(),
               .bracket = [self](const SVec& x, const SVec& y) { return self->bracket(x, y); },
               .form = [self](const SVec& x, const SVec& y) { return self->form(x, y); },
               .cartan = self->cartan,
               .pres = self->pres,
               .spaces = self->root_spaces,
               .t_map = self->t_map,
               .window = 3};
  return h;
}

namespace {

/// Verification loops shared by both window builders.
void verify_window(GradedWindow& w) {
  size_t d = w.dim();
  std::vector<AffElement> basis;
  size_t off = 0;
  for (long n = -w.N; n <= w.N; ++n) {
    for (const SVec& v : w.degree_bases[static_cast<size_t>(n + w.N)])
      basis.push_back(aff_term(n, v));
    off += w.degree_bases[static_cast<size_t>(n + w.N)].size();
  }
  (void)off;
  basis.push_back(aff_c());
  basis.push_back(aff_d());

  // The loop bracket is exact, so these identities are checked without any
  // truncation.
  std::vector<std::vector<AffElement>> br(d, std::vector<AffElement>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) br[i][j] = aff_bracket(basis[i], basis[j], w.alg);
  for (size_t i = 0; i < d && w.jacobi.pass; ++i)
    for (size_t j = i; j < d && w.jacobi.pass; ++j)
      for (size_t k = j; k < d; ++k) {
        AffElement s = aff_bracket(br[i][j], basis[k], w.alg);
        s = aff_add(std::move(s), aff_bracket(br[j][k], basis[i], w.alg));
        s = aff_add(std::move(s), aff_bracket(br[k][i], basis[j], w.alg));
        if (!s.is_zero()) {
          w.jacobi = {false, "window basis triple (" + std::to_string(i) + "," +
                                 std::to_string(j) + "," + std::to_string(k) + ")"};
          break;
        }
      }
  for (size_t i = 0; i < d && w.invariance.pass; ++i)
    for (size_t j = 0; j < d && w.invariance.pass; ++j)
      for (size_t k = 0; k < d; ++k) {
        Scalar lhs = aff_form(br[i][j], basis[k], w.alg);
        Scalar rhs = aff_form(basis[i], br[j][k], w.alg);
        if (lhs != rhs) {
          w.invariance = {false, "window basis triple (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k) + ")"};
          break;
        }
      }

  // Root spaces pair to zero unless opposite, and brackets respect the sum
  // of roots.
  for (const auto& [rho, xs] : w.root_spaces)
    for (const auto& [sig, ys] : w.root_spaces) {
      QVec sum = rho;
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += sig[i];
      bool opposite = is_zero_vec(sum);
      if (!opposite)
        for (const SVec& x : xs)
          for (const SVec& y : ys)
            if (!w.form(x, y).is_zero())
              w.orthogonality = {false, "root spaces with nonopposite roots pair nontrivially"};
      const std::vector<SVec>* target = nullptr;
      for (const auto& [tau, zs] : w.root_spaces)
        if (tau == sum) target = &zs;
      for (const SVec& x : xs)
        for (const SVec& y : ys) {
          auto v = w.bracket(x, y);
          if (!v || is_zero_vec(*v)) continue;
          bool ok = target ? vector_in_span(*target, *v) : false;
          if (!ok) w.grading = {false, "bracket escapes the root grading"};
        }
    }
}

}  // namespace

GradedWindow window(const AffAlgebra& a, int n) {
  if (n < 0) throw DimensionMismatch("window radius must be nonnegative");
  BaseData bd = base_data(a);
  size_t b = a.base.dim();
  GradedWindow w{.N = n,
                 .alg = a,
                 .degree_bases = {},
                 .pres = aff_root_system(a),
                 .root_spaces = {},
                 .cartan = {},
                 .t_map = SMat(),
                 .jacobi = {},
                 .invariance = {},
                 .orthogonality = {},
                 .grading = {}};
  std::vector<SVec> full;
  for (size_t i = 0; i < b; ++i) full.push_back(a.base.basis_vector(i));
  w.degree_bases.assign(static_cast<size_t>(2 * n + 1), full);

  size_t d = w.dim();
  auto embed_vec = [&](long deg, const SVec& v) {
    SVec out(d);
    auto coords = w.to_coords(aff_term(deg, v));
    return *coords;
  };
  size_t r = a.base.cartan().size();
  for (size_t i = 0; i < r; ++i)
    w.cartan.push_back(embed_vec(0, a.base.basis_vector(a.base.cartan()[i])));
  {
    SVec c(d), dd(d);
    c[d - 2] = Scalar(1);
    dd[d - 1] = Scalar(1);
    w.cartan.push_back(c);
    w.cartan.push_back(dd);
  }

  size_t s = bd.pres.ambient_dim();
  for (size_t p = 0; p < bd.rd.roots.size(); ++p) {
    for (long deg = -n; deg <= n; ++deg) {
      QVec root = append_coord(bd.coords[p], Rational(deg));
      std::vector<SVec> space;
      for (const SVec& v : bd.rd.spaces[p]) space.push_back(embed_vec(deg, v));
      if (p == bd.rd.zero_index && deg == 0) {
        space.clear();
        for (const SVec& h : w.cartan) space.push_back(h);
      }
      w.root_spaces.push_back({root, std::move(space)});
    }
  }

  // Representative map: base functionals keep their base representatives; the
  // degree functional is represented by c.
  SMat hgram(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      hgram.at(i, j) = a.base.form_matrix().at(a.base.cartan()[i], a.base.cartan()[j]);
  QMat stacked(bd.rd.roots.size(), r);
  for (size_t i = 0; i < bd.rd.roots.size(); ++i)
    for (size_t q = 0; q < r; ++q) stacked.at(i, q) = bd.rd.roots[i][q];
  rref(stacked);
  SMat t_map(r + 2, s + 1);
  for (size_t j = 0; j < s; ++j) {
    auto xi = solve_linear(hgram, rational_to_scalar_vec(stacked.row(j)));
    if (!xi) throw NoDualBasis("form degenerate on the base Cartan part");
    for (size_t i = 0; i < r; ++i) t_map.at(i, j) = (*xi)[i];
  }
  t_map.at(r, s) = Scalar(1);  // degree functional -> c
  w.t_map = std::move(t_map);

  verify_window(w);
  return w;
}

AutoReport check_auto_conditions(const AffAlgebra& a, const TwistedAutomorphism& s, int n) {
  AutoReport rep;
  rep.window_used = n;
  size_t b = a.base.dim();
  SMat power = SMat::identity(b);
  for (int k = 0; k < s.order; ++k) power = mat_mul(s.omega, power);
  if (!(power == SMat::identity(b)))
    rep.finite_order = {false, "base map does not have the stated order"};
  for (size_t i = 0; i < b && rep.automorphism.pass; ++i)
    for (size_t j = 0; j < b; ++j) {
      SVec lhs = mat_vec(s.omega, a.base.basis_bracket(i, j));
      SVec rhs = a.base.bracket(mat_vec(s.omega, a.base.basis_vector(i)),
                                mat_vec(s.omega, a.base.basis_vector(j)));
      if (lhs != rhs) {
        rep.automorphism = {false, "bracket not preserved at (" + a.base.labels()[i] + "," +
                                       a.base.labels()[j] + ")"};
        break;
      }
    }
  for (size_t i = 0; i < b && rep.isometry.pass; ++i)
    for (size_t j = 0; j < b; ++j) {
      Scalar lhs = a.base.pair(mat_vec(s.omega, a.base.basis_vector(i)),
                               mat_vec(s.omega, a.base.basis_vector(j)));
      if (lhs != a.base.form_matrix().at(i, j)) {
        rep.isometry = {false, "form not preserved at (" + a.base.labels()[i] + "," +
                                   a.base.labels()[j] + ")"};
        break;
      }
    }
  std::vector<SVec> hspan;
  for (size_t h : a.base.cartan()) hspan.push_back(a.base.basis_vector(h));
  for (size_t h : a.base.cartan())
    if (!vector_in_span(hspan, mat_vec(s.omega, a.base.basis_vector(h)))) {
      rep.cartan_preserved = {false, "image of " + a.base.labels()[h] +
                                         " leaves the Cartan part"};
      break;
    }
  if (!rep.finite_order.pass || !rep.automorphism.pass || !rep.isometry.pass ||
      !rep.cartan_preserved.pass)
    return rep;

  // Centralizer of the fixed Cartan part inside the fixed subalgebra, checked
  // on the window (degree-preserving brackets make this exact per degree).
  GradedWindow w = fixed_subalgebra(a, s, n);
  std::vector<SVec> cent = window_centralizer(w, w.cartan);
  for (const SVec& v : cent) {
    if (vector_in_span(w.cartan, v)) continue;
    // Reduce the witness against the Cartan part for readability.
    std::vector<SVec> all = w.cartan;
    all.push_back(v);
    std::vector<SVec> reduced = span_basis(all, w.dim());
    SVec witness = v;
    for (const SVec& u : reduced)
      if (!vector_in_span(w.cartan, u)) witness = u;
    rep.centralizer = {false, "centralizer exceeds the fixed Cartan part: " +
                                  aff_to_string(w.from_coords(witness), a)};
    break;
  }
  return rep;
}

GradedWindow fixed_subalgebra(const AffAlgebra& a, const TwistedAutomorphism& s, int n) {
  if (n < 0) throw DimensionMismatch("window radius must be nonnegative");
  BaseData bd = base_data(a);
  size_t b = a.base.dim();
  int m = s.order;

  // Eigenspaces of the base map for each power of zeta.
  std::vector<std::vector<SVec>> eig(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    SMat shifted = s.omega;
    Scalar lambda = s.zeta.pow(k);
    for (size_t i = 0; i < b; ++i) shifted.at(i, i) -= lambda;
    eig[static_cast<size_t>(k)] = span_basis(kernel_basis(shifted), b);
  }

  // Fixed part of the base Cartan.
  size_t r = a.base.cartan().size();
  SMat omega_h(r, r);
  for (size_t i = 0; i < r; ++i) {
    SVec img = mat_vec(s.omega, a.base.basis_vector(a.base.cartan()[i]));
    for (size_t q = 0; q < r; ++q) omega_h.at(q, i) = img[a.base.cartan()[q]];
    // components outside the Cartan rows are zero by the preservation check
  }
  for (size_t i = 0; i < r; ++i) omega_h.at(i, i) -= Scalar(1);
  std::vector<SVec> hfix_coords = span_basis(kernel_basis(omega_h), r);
  size_t rbar = hfix_coords.size();
  std::vector<SVec> hfix;  // base coordinates
  for (const SVec& xi : hfix_coords) {
    SVec v(b);
    for (size_t q = 0; q < r; ++q)
      v = vec_add(v, vec_scale(a.base.basis_vector(a.base.cartan()[q]), xi[q]));
    hfix.push_back(std::move(v));
  }
  QMat hgram(rbar, rbar);
  for (size_t i = 0; i < rbar; ++i) {
    SVec tmp(rbar);
    for (size_t j = 0; j < rbar; ++j) tmp[j] = a.base.pair(hfix[i], hfix[j]);
    QVec row = require_rational_vec(tmp, "gram matrix on the fixed Cartan");
    for (size_t j = 0; j < rbar; ++j) hgram.at(i, j) = row[j];
  }

  // Restrict every base root functional to the fixed Cartan and bucket the
  // root spaces by the restriction.
  std::vector<QVec> restricted;
  for (const QVec& root : bd.rd.roots) {
    QVec val(rbar);
    for (size_t i = 0; i < rbar; ++i) {
      Scalar acc;
      for (size_t q = 0; q < r; ++q) acc += hfix_coords[i][q] * Scalar(root[q]);
      if (!acc.is_rational())
        throw BadPresentation("restricted root functional is not rational");
      val[i] = acc.rat();
    }
    restricted.push_back(std::move(val));
  }
  std::vector<QVec> buckets;
  std::vector<std::vector<SVec>> bucket_span;
  for (size_t p = 0; p < restricted.size(); ++p) {
    size_t at = buckets.size();
    for (size_t q = 0; q < buckets.size(); ++q)
      if (buckets[q] == restricted[p]) at = q;
    if (at == buckets.size()) {
      buckets.push_back(restricted[p]);
      bucket_span.push_back({});
    }
    for (const SVec& v : bd.rd.spaces[p]) bucket_span[at].push_back(v);
  }
  for (auto& sp : bucket_span) sp = span_basis(sp, b);

  // Intersections with the eigenspaces give the fixed root spaces; the set of
  // admissible degrees of each bucket is a union of classes modulo the order.
  std::vector<std::vector<std::vector<SVec>>> piece(buckets.size());
  for (size_t q = 0; q < buckets.size(); ++q) {
    piece[q].resize(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k)
      piece[q][static_cast<size_t>(k)] =
          span_intersect(eig[static_cast<size_t>(k)], bucket_span[q], b);
  }

  // Presentation over the fixed Cartan plus the degree direction.
  QMat stacked(buckets.size(), rbar);
  for (size_t q = 0; q < buckets.size(); ++q)
    for (size_t i = 0; i < rbar; ++i) stacked.at(q, i) = buckets[q][i];
  rref(stacked);
  std::vector<QVec> brows;
  for (size_t i = 0; i < stacked.rows(); ++i) {
    QVec row = stacked.row(i);
    if (!is_zero_vec(row)) brows.push_back(std::move(row));
  }
  size_t sbar = brows.size();
  QMat bt(rbar, sbar);
  for (size_t j = 0; j < sbar; ++j)
    for (size_t i = 0; i < rbar; ++i) bt.at(i, j) = brows[j][i];
  QMat bm(sbar, rbar);
  for (size_t i = 0; i < sbar; ++i)
    for (size_t j = 0; j < rbar; ++j) bm.at(i, j) = brows[i][j];
  QMat dual(rbar, rbar);
  {
    // Inverse of the fixed Cartan gram matrix.
    QMat aug(rbar, 2 * rbar);
    for (size_t i = 0; i < rbar; ++i) {
      for (size_t j = 0; j < rbar; ++j) aug.at(i, j) = hgram.at(i, j);
      aug.at(i, rbar + i) = Rational(1);
    }
    auto pivots = rref(aug);
    if (pivots.size() != rbar)
      throw NoDualBasis("form degenerate on the fixed Cartan part");
    for (size_t i = 0; i < rbar; ++i)
      for (size_t j = 0; j < rbar; ++j) dual.at(i, j) = aug.at(i, rbar + j);
  }
  QMat gram_small = mat_mul(bm, mat_mul(dual, bt));
  QMat gram(sbar + 1, sbar + 1);
  for (size_t i = 0; i < sbar; ++i)
    for (size_t j = 0; j < sbar; ++j) gram.at(i, j) = gram_small.at(i, j);
  QMat embed(sbar + 1, 1);
  embed.at(sbar, 0) = Rational(1);

  IntLattice mod = IntLattice::from_generators(
      1, IntMat(1, 1, {BigInt(m)}));
  std::vector<QVec> bucket_coords;
  std::vector<GrrsFamily> fams;
  for (size_t q = 0; q < buckets.size(); ++q) {
    auto x = solve_linear(bt, buckets[q]);
    if (!x) throw BadPresentation("restricted functional outside its own span");
    bucket_coords.push_back(*x);
    std::vector<IntVec> residues;
    for (int k = 0; k < m; ++k)
      if (!piece[q][static_cast<size_t>(k)].empty()) residues.push_back(IntVec{BigInt(k)});
    if (residues.empty()) continue;
    fams.push_back({append_coord(*x, Rational(0)), CosetUnion(mod, residues)});
  }
  GrrsPresentation pres(sbar + 1, gram, embed, std::move(fams));

  GradedWindow w{.N = n,
                 .alg = a,
                 .degree_bases = {},
                 .pres = std::move(pres),
                 .root_spaces = {},
                 .cartan = {},
                 .t_map = SMat(),
                 .jacobi = {},
                 .invariance = {},
                 .orthogonality = {},
                 .grading = {}};
  for (long deg = -n; deg <= n; ++deg) {
    int k = static_cast<int>(((deg % m) + m) % m);
    std::vector<SVec> basis;
    for (size_t q = 0; q < buckets.size(); ++q)
      for (const SVec& v : piece[q][static_cast<size_t>(k)]) basis.push_back(v);
    w.degree_bases.push_back(std::move(basis));
  }

  size_t d = w.dim();
  auto embed_vec = [&](long deg, const SVec& v) {
    auto coords = w.to_coords(aff_term(deg, v));
    if (!coords) throw BadPresentation("fixed vector failed to embed in its window");
    return *coords;
  };
  for (const SVec& v : hfix) w.cartan.push_back(embed_vec(0, v));
  {
    SVec c(d), dd(d);
    c[d - 2] = Scalar(1);
    dd[d - 1] = Scalar(1);
    w.cartan.push_back(c);
    w.cartan.push_back(dd);
  }
  for (size_t q = 0; q < buckets.size(); ++q)
    for (long deg = -n; deg <= n; ++deg) {
      int k = static_cast<int>(((deg % m) + m) % m);
      const auto& sp = piece[q][static_cast<size_t>(k)];
      if (sp.empty()) continue;
      QVec root = append_coord(bucket_coords[q], Rational(deg));
      std::vector<SVec> space;
      for (const SVec& v : sp) space.push_back(embed_vec(deg, v));
      if (is_zero_vec(bucket_coords[q]) && deg == 0) {
        // The zero root space also carries c and d.
        SVec c(d), dd(d);
        c[d - 2] = Scalar(1);
        dd[d - 1] = Scalar(1);
        space.push_back(c);
        space.push_back(dd);
      }
      w.root_spaces.push_back({root, std::move(space)});
    }

  SMat t_map(rbar + 2, sbar + 1);
  for (size_t j = 0; j < sbar; ++j) {
    auto xi = solve_linear(
        [&] {
          SMat g(rbar, rbar);
          for (size_t i = 0; i < rbar; ++i)
            for (size_t q2 = 0; q2 < rbar; ++q2) g.at(i, q2) = Scalar(hgram.at(i, q2));
          return g;
        }(),
        rational_to_scalar_vec(brows[j]));
    if (!xi) throw NoDualBasis("form degenerate on the fixed Cartan part");
    for (size_t i = 0; i < rbar; ++i) t_map.at(i, j) = (*xi)[i];
  }
  t_map.at(rbar, sbar) = Scalar(1);
  w.t_map = std::move(t_map);

  verify_window(w);
  return w;
}

std::vector<SVec> window_core(const GradedWindow& w) {
  std::vector<SVec> gens;
  for (const auto& [root, space] : w.root_spaces) {
    if (is_zero_vec(root) || grrs_form(root, root, w.pres).is_zero()) continue;
    for (const SVec& v : space) gens.push_back(v);
  }
  return bracket_closure(gens, w.dim(),
                         [&w](const SVec& x, const SVec& y) { return w.bracket(x, y); });
}

std::vector<SVec> window_centralizer(const GradedWindow& w, const std::vector<SVec>& s) {
  size_t d = w.dim();
  size_t b = w.alg.base.dim();
  // The loop bracket is closed-form, so each constraint [x, v] = 0 is imposed
  // exactly even when the bracket lands outside the window.
  std::vector<SVec> rows;
  for (const SVec& vc : s) {
    AffElement v = w.from_coords(vc);
    std::vector<AffElement> cols(d);
    std::set<long> degrees;
    for (size_t i = 0; i < d; ++i) {
      SVec e(d);
      e[i] = Scalar(1);
      cols[i] = aff_bracket(w.from_coords(e), v, w.alg);
      for (const auto& [deg, term] : cols[i].terms) degrees.insert(deg);
    }
    for (long deg : degrees)
      for (size_t k = 0; k < b; ++k) {
        SVec row(d);
        bool nonzero = false;
        for (size_t i = 0; i < d; ++i) {
          auto it = cols[i].terms.find(deg);
          if (it == cols[i].terms.end()) continue;
          row[i] = it->second[k];
          nonzero = nonzero || !row[i].is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    SVec crow(d);
    bool cn = false;
    for (size_t i = 0; i < d; ++i) {
      crow[i] = cols[i].c_coeff;
      cn = cn || !crow[i].is_zero();
    }
    if (cn) rows.push_back(std::move(crow));
    // Brackets never produce a d component, so no d row is needed.
  }
  SMat m(rows.size(), d);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < d; ++j) m.at(i, j) = rows[i][j];
  return span_basis(kernel_basis(m), d);
}

WindowGRReport window_check_GR(const GradedWindow& w) {
  WindowGRReport rep;
  rep.window_used = w.N;
  size_t d = w.dim();

  if (!w.invariance.pass)
    rep.gr1 = {false, w.invariance.witness};
  else {
    SMat gram(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        SVec ei(d), ej(d);
        ei[i] = Scalar(1);
        ej[j] = Scalar(1);
        gram.at(i, j) = w.form(ei, ej);
      }
    if (rank(gram) != d) rep.gr1 = {false, "form degenerate on the window"};
  }

  for (const SVec& x : w.cartan)
    for (const SVec& y : w.cartan) {
      auto br = w.bracket(x, y);
      if (!br || !is_zero_vec(*br)) rep.gr2 = {false, "Cartan part is not abelian"};
    }
  if (rep.gr2.pass) {
    std::vector<SVec> cent = window_centralizer(w, w.cartan);
    for (const SVec& v : cent)
      if (!vector_in_span(w.cartan, v)) {
        rep.gr2 = {false, "Cartan part is not self-centralizing on the window"};
        break;
      }
  }

  for (const auto& [root, space] : w.root_spaces) {
    if (!rep.gr3.pass) break;
    if (is_zero_vec(root) || grrs_form(root, root, w.pres).is_zero()) continue;
    for (const SVec& x : space)
      for (size_t i = 0; i < d; ++i) {
        SVec y(d);
        y[i] = Scalar(1);
        bool settled = false;
        for (int step = 0; step < 2 * w.N + 2; ++step) {
          auto br = w.bracket(x, y);
          if (!br) {
            settled = true;  // left the window: no in-window counterexample
            break;
          }
          y = *br;
          if (is_zero_vec(y)) {
            settled = true;
            break;
          }
        }
        if (!settled) {
          rep.gr3 = {false, "adjoint action fails to vanish within the window"};
          break;
        }
      }
  }

  if (w.pres.nonisotropic().empty()) rep.gr5 = {false, "no nonisotropic roots"};

  std::vector<SVec> gc = window_core(w);
  std::vector<SVec> cent = window_centralizer(w, gc);
  for (const SVec& v : cent)
    if (!vector_in_span(gc, v)) {
      rep.tame = {false, "centralizer of the core leaves the core (window check)"};
      break;
    }
  return rep;
}

}  // namespace grla
