#include "grla/liealg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace grla {

namespace {

std::string triple_tag(const std::vector<std::string>& labels, size_t i, size_t j, size_t k) {
  return "(" + labels[i] + "," + labels[j] + "," + labels[k] + ")";
}

SMat stack_rows(const std::vector<SVec>& rows, size_t dim) {
  SMat m(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
  return m;
}

/// Coordinates of v in the given independent columns, if v lies in their span.
std::optional<SVec> coords_in(const std::vector<SVec>& basis, const SVec& v) {
  if (basis.empty()) return is_zero_vec(v) ? std::optional<SVec>(SVec{}) : std::nullopt;
  SMat m(v.size(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) m.at(i, j) = basis[j][i];
  return solve_linear(m, v);
}

QMat qmat_inverse(const QMat& m) {
  size_t n = m.rows();
  QMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Rational(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw NoDualBasis("gram matrix on the Cartan part is singular");
  QMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

/// Coefficients of det(xI - M), leading term first (monic).
std::vector<Rational> char_poly(const QMat& m) {
  size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[0] = Rational(1);
  QMat mk(n, n);  // starts as zero; iterates Faddeev-LeVerrier
  for (size_t k = 1; k <= n; ++k) {
    for (size_t i = 0; i < n; ++i) mk.at(i, i) += c[k - 1];
    mk = mat_mul(m, mk);
    Rational tr;
    for (size_t i = 0; i < n; ++i) tr += mk.at(i, i);
    c[k] = -(tr / Rational(static_cast<long long>(k)));
  }
  return c;
}

std::vector<BigInt> positive_divisors(BigInt v) {
  if (v < 0) v = -v;
  std::vector<BigInt> divs;
  for (BigInt d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      divs.push_back(d);
      if (d * d != v) divs.push_back(v / d);
    }
  }
  return divs;
}

/// All rational roots of the monic rational polynomial (leading first), with
/// the multiplicity of 0 folded in.  Nonzero roots are found by the rational
/// root bound after clearing denominators.
std::vector<Rational> rational_roots(const std::vector<Rational>& poly) {
  std::vector<Rational> coeffs = poly;
  std::set<Rational> roots;
  while (coeffs.size() > 1 && coeffs.back().is_zero()) {
    roots.insert(Rational(0));
    coeffs.pop_back();
  }
  if (coeffs.size() <= 1) return {roots.begin(), roots.end()};
  BigInt denlcm = 1;
  for (const auto& c : coeffs) denlcm = denlcm / boost::multiprecision::gcd(denlcm, c.den()) * c.den();
  std::vector<BigInt> a(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    Rational scaled = coeffs[i] * Rational(denlcm);
    a[i] = scaled.num();
  }
  auto eval = [&](const Rational& x) {
    Rational v;
    for (const auto& ai : a) v = v * x + Rational(ai);
    return v;
  };
  for (const BigInt& p : positive_divisors(a.back()))
    for (const BigInt& q : positive_divisors(a.front())) {
      Rational cand(p, q);
      if (eval(cand).is_zero()) roots.insert(cand);
      if (eval(-cand).is_zero()) roots.insert(-cand);
    }
  return {roots.begin(), roots.end()};
}

QVec scalar_to_rational_vec(const SVec& v, const char* what) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_rational()) throw NotDiagonalizable(std::string(what) + ": value outside the rational subfield");
    out[i] = v[i].rat();
  }
  return out;
}

SVec rational_to_scalar_vec(const QVec& v) {
  SVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Scalar(v[i]);
  return out;
}

}  // namespace

StructLieAlgebra::StructLieAlgebra(std::vector<std::string> labels, SMat form,
                                   std::vector<size_t> cartan)
    : n_(labels.size()), labels_(std::move(labels)), form_(std::move(form)),
      cartan_(std::move(cartan)) {
  if (form_.rows() != n_ || form_.cols() != n_)
    throw DimensionMismatch("form matrix does not match the basis");
  for (size_t h : cartan_)
    if (h >= n_) throw DimensionMismatch("cartan index out of range");
  c_.assign(n_, std::vector<SVec>(n_, SVec(n_)));
}

void StructLieAlgebra::set_bracket(size_t i, size_t j, SVec value) {
  if (i >= n_ || j >= n_ || value.size() != n_)
    throw DimensionMismatch("bracket assignment out of range");
  SVec neg(n_);
  for (size_t k = 0; k < n_; ++k) neg[k] = -value[k];
  c_[i][j] = std::move(value);
  c_[j][i] = std::move(neg);
}

SVec StructLieAlgebra::bracket(const SVec& x, const SVec& y) const {
  if (x.size() != n_ || y.size() != n_) throw DimensionMismatch("bracket");
  SVec out(n_);
  for (size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (size_t k = 0; k < n_; ++k) out[k] += c * c_[i][j][k];
    }
  }
  return out;
}

Scalar StructLieAlgebra::pair(const SVec& x, const SVec& y) const {
  return form_value(form_, x, y);
}

SMat StructLieAlgebra::ad(const SVec& x) const {
  SMat m(n_, n_);
  for (size_t j = 0; j < n_; ++j) {
    SVec col = bracket(x, basis_vector(j));
    for (size_t i = 0; i < n_; ++i) m.at(i, j) = col[i];
  }
  return m;
}

SVec StructLieAlgebra::basis_vector(size_t i) const {
  SVec v(n_);
  v[i] = Scalar(1);
  return v;
}

std::vector<SVec> span_basis(const std::vector<SVec>& vectors, size_t dim) {
  SMat m = stack_rows(vectors, dim);
  rref(m);
  std::vector<SVec> out;
  for (size_t i = 0; i < m.rows(); ++i) {
    SVec row = m.row(i);
    if (!is_zero_vec(row)) out.push_back(std::move(row));
  }
  return out;
}

bool vector_in_span(const std::vector<SVec>& basis, const SVec& v) {
  return in_span(basis, v);
}

AlgebraReport validate_algebra(const StructLieAlgebra& L) {
  AlgebraReport rep;
  size_t n = L.dim();
  const auto& labels = L.labels();
  for (size_t i = 0; i < n && rep.antisymmetry.pass; ++i)
    for (size_t j = 0; j <= i; ++j) {
      SVec sum = vec_add(L.basis_bracket(i, j), L.basis_bracket(j, i));
      if (!is_zero_vec(sum) || (i == j && !is_zero_vec(L.basis_bracket(i, i)))) {
        rep.antisymmetry = {false, triple_tag(labels, i, j, j)};
        break;
      }
    }
  for (size_t i = 0; i < n && rep.jacobi.pass; ++i)
    for (size_t j = i; j < n && rep.jacobi.pass; ++j)
      for (size_t k = j; k < n; ++k) {
        SVec s = L.bracket(L.basis_bracket(i, j), L.basis_vector(k));
        s = vec_add(s, L.bracket(L.basis_bracket(j, k), L.basis_vector(i)));
        s = vec_add(s, L.bracket(L.basis_bracket(k, i), L.basis_vector(j)));
        if (!is_zero_vec(s)) {
          rep.jacobi = {false, triple_tag(labels, i, j, k)};
          break;
        }
      }
  if (!L.form_matrix().is_symmetric()) rep.form_symmetric = {false, "form matrix"};
  for (size_t i = 0; i < n && rep.form_invariant.pass; ++i)
    for (size_t j = 0; j < n && rep.form_invariant.pass; ++j)
      for (size_t k = 0; k < n; ++k) {
        Scalar lhs = L.pair(L.basis_bracket(i, j), L.basis_vector(k));
        Scalar rhs = L.pair(L.basis_vector(i), L.basis_bracket(j, k));
        if (lhs != rhs) {
          rep.form_invariant = {false, triple_tag(labels, i, j, k)};
          break;
        }
      }
  if (rank(L.form_matrix()) != n) rep.form_nondegenerate = {false, "form matrix has a radical"};
  for (size_t a : L.cartan())
    for (size_t b : L.cartan())
      if (!is_zero_vec(L.basis_bracket(a, b))) {
        rep.cartan_abelian = {false, triple_tag(labels, a, b, b)};
      }
  try {
    root_decomposition(L);
  } catch (const NotDiagonalizable& e) {
    rep.ad_diagonalizable = {false, e.what()};
  } catch (const CartanViolation&) {
    // A zero weight space larger than the Cartan part is a GR2 failure, not a
    // diagonalizability failure.
  }
  return rep;
}

RootDecomposition root_decomposition(const StructLieAlgebra& L) {
  size_t n = L.dim();
  const auto& cartan = L.cartan();
  struct Piece {
    std::vector<SVec> basis;
    QVec tag;
  };
  std::vector<Piece> pieces;
  {
    Piece whole;
    for (size_t i = 0; i < n; ++i) whole.basis.push_back(L.basis_vector(i));
    pieces.push_back(std::move(whole));
  }
  for (size_t hc : cartan) {
    SMat a = L.ad(L.basis_vector(hc));
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      size_t k = piece.basis.size();
      QMat restricted(k, k);
      for (size_t j = 0; j < k; ++j) {
        SVec image = mat_vec(a, piece.basis[j]);
        auto coords = coords_in(piece.basis, image);
        if (!coords)
          throw NotDiagonalizable("Cartan action does not preserve a joint eigenspace");
        QVec col = scalar_to_rational_vec(*coords, "ad eigenvalue data");
        for (size_t i = 0; i < k; ++i) restricted.at(i, j) = col[i];
      }
      size_t found = 0;
      for (const Rational& lambda : rational_roots(char_poly(restricted))) {
        QMat shifted = restricted;
        for (size_t i = 0; i < k; ++i) shifted.at(i, i) -= lambda;
        auto ker = kernel_basis(shifted);
        if (ker.empty()) continue;
        Piece sub;
        sub.tag = piece.tag;
        sub.tag.push_back(lambda);
        for (const QVec& y : ker) {
          SVec v(n);
          for (size_t j = 0; j < k; ++j)
            v = vec_add(v, vec_scale(piece.basis[j], Scalar(y[j])));
          sub.basis.push_back(std::move(v));
        }
        found += sub.basis.size();
        next.push_back(std::move(sub));
      }
      if (found != k)
        throw NotDiagonalizable("ad is not diagonalizable over the rational subfield");
    }
    pieces = std::move(next);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.tag < b.tag; });

  RootDecomposition rd;
  size_t r = cartan.size();
  QVec zero(r);
  std::optional<size_t> zero_at;
  for (size_t p = 0; p < pieces.size(); ++p) {
    rd.roots.push_back(pieces[p].tag);
    rd.spaces.push_back(std::move(pieces[p].basis));
    if (pieces[p].tag == zero) zero_at = p;
  }
  if (!zero_at) throw CartanViolation("zero weight space is missing");
  rd.zero_index = *zero_at;
  // The zero weight space must be exactly the Cartan part.
  std::vector<SVec> hvecs;
  for (size_t hc : cartan) hvecs.push_back(L.basis_vector(hc));
  if (rd.spaces[rd.zero_index].size() != r)
    throw CartanViolation("zero weight space exceeds the Cartan part");
  for (const SVec& h : hvecs)
    if (!in_span(rd.spaces[rd.zero_index], h))
      throw CartanViolation("Cartan part is not inside the zero weight space");

  // Gram matrix of the form on the Cartan basis, used for the representatives.
  SMat hgram(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      hgram.at(i, j) = L.form_matrix().at(cartan[i], cartan[j]);
  for (const QVec& root : rd.roots) {
    auto xi = solve_linear(hgram, rational_to_scalar_vec(root));
    if (!xi) throw NoDualBasis("no form representative: form degenerate on the Cartan part");
    SVec t(n);
    for (size_t i = 0; i < r; ++i) t = vec_add(t, vec_scale(hvecs[i], (*xi)[i]));
    rd.t.push_back(std::move(t));
  }
  for (size_t p = 0; p < rd.roots.size(); ++p)
    rd.isotropic.push_back(L.pair(rd.t[p], rd.t[p]).is_zero());
  return rd;
}

std::optional<size_t> RootDecomposition::find(const QVec& root) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == root) return i;
  return std::nullopt;
}

Sl2Triple sl2_triple(const StructLieAlgebra& L, const RootDecomposition& rd, const QVec& alpha) {
  auto idx = rd.find(alpha);
  if (!idx) throw IsotropicRoot("not a root");
  if (*idx == rd.zero_index || rd.isotropic[*idx])
    throw IsotropicRoot("sl2 triple requires a nonisotropic root");
  QVec neg(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) neg[i] = -alpha[i];
  auto nidx = rd.find(neg);
  if (!nidx) throw IsotropicRoot("opposite root space is missing");
  const SVec& e = rd.spaces[*idx][0];
  Scalar len = L.pair(rd.t[*idx], rd.t[*idx]);
  Scalar target = Scalar(2) / len;
  for (const SVec& w : rd.spaces[*nidx]) {
    Scalar p = L.pair(e, w);
    if (!p.is_zero()) {
      SVec f = vec_scale(w, target / p);
      Sl2Triple out{e, L.bracket(e, f), f};
      return out;
    }
  }
  throw IsotropicRoot("form vanishes between opposite root spaces");
}

std::pair<GrrsPresentation, std::vector<QVec>> induced_presentation(
    const StructLieAlgebra& L, const RootDecomposition& rd) {
  size_t r = L.cartan().size();
  // Basis of the span of the root functionals.
  QMat stacked(rd.roots.size(), r);
  for (size_t i = 0; i < rd.roots.size(); ++i)
    for (size_t j = 0; j < r; ++j) stacked.at(i, j) = rd.roots[i][j];
  rref(stacked);
  std::vector<QVec> brows;
  for (size_t i = 0; i < stacked.rows(); ++i) {
    QVec row = stacked.row(i);
    if (!is_zero_vec(row)) brows.push_back(std::move(row));
  }
  size_t s = brows.size();
  QMat bt(r, s);  // columns are the basis functionals
  for (size_t j = 0; j < s; ++j)
    for (size_t i = 0; i < r; ++i) bt.at(i, j) = brows[j][i];

  QMat hgram(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      const Scalar& v = L.form_matrix().at(L.cartan()[i], L.cartan()[j]);
      if (!v.is_rational())
        throw BadPresentation("Cartan gram matrix is not rational");
      hgram.at(i, j) = v.rat();
    }
  QMat dual = qmat_inverse(hgram);
  QMat b(s, r);
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < r; ++j) b.at(i, j) = brows[i][j];
  QMat gram = mat_mul(b, mat_mul(dual, bt));

  std::vector<QVec> coords;
  for (const QVec& root : rd.roots) {
    auto x = solve_linear(bt, root);
    if (!x) throw BadPresentation("root functional outside its own span");
    coords.push_back(*x);
  }
  CosetUnion point = CosetUnion::lattice(IntLattice(0));
  std::vector<GrrsFamily> fams;
  for (const QVec& x : coords) fams.push_back({x, point});
  GrrsPresentation pres(s, gram, QMat(s, 0), std::move(fams));
  return {std::move(pres), std::move(coords)};
}

std::vector<SVec> bracket_closure(
    const std::vector<SVec>& gens, size_t dim,
    const std::function<std::optional<SVec>(const SVec&, const SVec&)>& br) {
  std::vector<SVec> basis = span_basis(gens, dim);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SVec> add;
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = i + 1; j < basis.size(); ++j) {
        auto v = br(basis[i], basis[j]);
        if (v && !is_zero_vec(*v) && !in_span(basis, *v)) add.push_back(*v);
      }
    if (!add.empty()) {
      std::vector<SVec> all = basis;
      all.insert(all.end(), add.begin(), add.end());
      basis = span_basis(all, dim);
      grew = true;
    }
  }
  return basis;
}

std::vector<SVec> core(const StructLieAlgebra& L, const RootDecomposition& rd) {
  std::vector<SVec> gens;
  for (size_t p = 0; p < rd.roots.size(); ++p) {
    if (p == rd.zero_index || rd.isotropic[p]) continue;
    for (const SVec& v : rd.spaces[p]) gens.push_back(v);
  }
  auto br = [&L](const SVec& x, const SVec& y) -> std::optional<SVec> {
    return L.bracket(x, y);
  };
  return bracket_closure(gens, L.dim(), br);
}

std::vector<SVec> centralizer(const StructLieAlgebra& L, const std::vector<SVec>& s) {
  size_t n = L.dim();
  SMat m(s.size() * n, n);
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t i = 0; i < n; ++i) {
      SVec col = L.bracket(L.basis_vector(i), s[a]);
      for (size_t k = 0; k < n; ++k) m.at(a * n + k, i) = col[k];
    }
  return span_basis(kernel_basis(m), n);
}

std::vector<SVec> center(const StructLieAlgebra& L) {
  std::vector<SVec> all;
  for (size_t i = 0; i < L.dim(); ++i) all.push_back(L.basis_vector(i));
  return centralizer(L, all);
}

std::vector<SVec> subalgebra_center(const StructLieAlgebra& L, const std::vector<SVec>& s) {
  size_t n = L.dim();
  if (s.empty()) return {};
  SMat m(s.size() * n, s.size());
  for (size_t b = 0; b < s.size(); ++b)
    for (size_t a = 0; a < s.size(); ++a) {
      SVec col = L.bracket(s[a], s[b]);
      for (size_t k = 0; k < n; ++k) m.at(b * n + k, a) = col[k];
    }
  std::vector<SVec> out;
  for (const SVec& y : kernel_basis(m)) {
    SVec v(n);
    for (size_t a = 0; a < s.size(); ++a) v = vec_add(v, vec_scale(s[a], y[a]));
    out.push_back(std::move(v));
  }
  return span_basis(out, n);
}

GRReport check_GR(const StructLieAlgebra& L) {
  GRReport rep;
  AlgebraReport base = validate_algebra(L);
  if (!base.form_symmetric.pass || !base.form_nondegenerate.pass || !base.form_invariant.pass) {
    rep.gr1 = {false, base.form_symmetric.pass
                          ? (base.form_nondegenerate.pass ? base.form_invariant.witness
                                                          : base.form_nondegenerate.witness)
                          : base.form_symmetric.witness};
  }
  std::optional<RootDecomposition> rd;
  std::string rd_error;
  if (base.cartan_abelian.pass && base.ad_diagonalizable.pass) {
    try {
      rd = root_decomposition(L);
    } catch (const std::runtime_error& e) {
      rd_error = e.what();
    }
  } else {
    rd_error = base.cartan_abelian.pass ? base.ad_diagonalizable.witness
                                        : base.cartan_abelian.witness;
  }
  if (!rd) {
    rep.gr2 = {false, rd_error};
    std::string skip = "root decomposition unavailable";
    rep.gr3 = rep.gr5 = rep.gr6a = rep.gr6b = rep.tame = {false, skip};
    return rep;
  }

  size_t n = L.dim();
  for (size_t p = 0; p < rd->roots.size() && rep.gr3.pass; ++p) {
    if (p == rd->zero_index || rd->isotropic[p]) continue;
    for (const SVec& x : rd->spaces[p]) {
      SMat a = L.ad(x);
      SMat power = a;
      for (size_t e = 1; e < n; ++e) power = mat_mul(power, a);
      bool zero = true;
      for (size_t i = 0; i < n && zero; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!power.at(i, j).is_zero()) {
            zero = false;
            break;
          }
      if (!zero) {
        rep.gr3 = {false, "non-nilpotent adjoint action on a nonisotropic root vector"};
        break;
      }
    }
  }
  // GR4: the root set of a finite-dimensional algebra is finite, hence discrete.
  bool have_noniso = false;
  for (size_t p = 0; p < rd->roots.size(); ++p)
    if (p != rd->zero_index && !rd->isotropic[p]) have_noniso = true;
  if (!have_noniso) rep.gr5 = {false, "no nonisotropic roots"};

  try {
    auto [pres, coords] = induced_presentation(L, *rd);
    DecompositionResult dec = decompose(pres);
    if (dec.components.size() != 1)
      rep.gr6a = {false, std::to_string(dec.components.size()) + " orthogonal components"};
    CosetUnion iso = isolated_roots(pres);
    if (!iso.is_empty()) rep.gr6b = {false, "isolated isotropic roots exist"};
  } catch (const std::runtime_error& e) {
    rep.gr6a = {false, std::string("root presentation unavailable: ") + e.what()};
    rep.gr6b = {false, std::string("root presentation unavailable: ") + e.what()};
  }

  std::vector<SVec> gc = core(L, *rd);
  std::vector<SVec> cent = centralizer(L, gc.empty() ? std::vector<SVec>{SVec(n)} : gc);
  for (const SVec& v : cent)
    if (!in_span(gc, v)) {
      rep.tame = {false, "centralizer of the core leaves the core"};
      break;
    }
  return rep;
}

QuotientAlgebra quotient_by_ideal(const StructLieAlgebra& L, const std::vector<SVec>& ideal) {
  size_t n = L.dim();
  std::vector<SVec> ibasis = span_basis(ideal, n);
  for (size_t i = 0; i < n; ++i)
    for (const SVec& v : ibasis)
      if (!in_span(ibasis, L.bracket(L.basis_vector(i), v)))
        throw NotAnIdeal("subspace is not bracket-stable");
  // Pivot columns of the ideal basis; the complement coordinates survive.
  std::vector<size_t> pivots;
  for (const SVec& row : ibasis) {
    size_t p = 0;
    while (p < n && row[p].is_zero()) ++p;
    pivots.push_back(p);
  }
  std::vector<bool> is_pivot(n, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<size_t> kept;
  for (size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) kept.push_back(i);
  size_t m = kept.size();

  auto project = [&](SVec x) {
    for (size_t r = 0; r < ibasis.size(); ++r) {
      Scalar c = x[pivots[r]];
      if (!c.is_zero()) x = vec_sub(x, vec_scale(ibasis[r], c));
    }
    SVec out(m);
    for (size_t a = 0; a < m; ++a) out[a] = x[kept[a]];
    return out;
  };

  std::vector<std::string> labels;
  std::vector<size_t> cartan;
  SMat form(m, m);
  for (size_t a = 0; a < m; ++a) {
    labels.push_back(L.labels()[kept[a]]);
    for (size_t b = 0; b < m; ++b) form.at(a, b) = L.form_matrix().at(kept[a], kept[b]);
  }
  for (size_t a = 0; a < m; ++a)
    if (std::find(L.cartan().begin(), L.cartan().end(), kept[a]) != L.cartan().end())
      cartan.push_back(a);
  StructLieAlgebra q(labels, form, cartan);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      q.set_bracket(a, b, project(L.basis_bracket(kept[a], kept[b])));
  SMat proj(m, n);
  for (size_t i = 0; i < n; ++i) {
    SVec col = project(L.basis_vector(i));
    for (size_t a = 0; a < m; ++a) proj.at(a, i) = col[a];
  }
  return {std::move(q), std::move(proj)};
}

StructLieAlgebra restrict_to_subalgebra(const StructLieAlgebra& L, const std::vector<SVec>& basis,
                                        const std::vector<SVec>& cartan_vectors) {
  size_t n = L.dim();
  std::vector<SVec> ordered;
  for (const SVec& h : cartan_vectors) {
    if (!in_span(ordered, h)) ordered.push_back(h);
  }
  size_t c = ordered.size();
  for (const SVec& v : basis)
    if (!in_span(ordered, v)) ordered.push_back(v);
  size_t m = ordered.size();
  std::vector<std::string> labels;
  for (size_t a = 0; a < m; ++a) labels.push_back("v" + std::to_string(a));
  SMat form(m, m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) form.at(a, b) = L.pair(ordered[a], ordered[b]);
  std::vector<size_t> cartan;
  for (size_t a = 0; a < c; ++a) cartan.push_back(a);
  StructLieAlgebra out(labels, form, cartan);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b) {
      SVec br = L.bracket(ordered[a], ordered[b]);
      auto coords = coords_in(ordered, br);
      if (!coords) throw NotAnIdeal("vectors do not span a subalgebra");
      out.set_bracket(a, b, *coords);
    }
  (void)n;
  return out;
}

bool is_simple(const StructLieAlgebra& L) {
  size_t n = L.dim();
  if (n == 0 || n > 20) return false;
  RootDecomposition rd;
  try {
    rd = root_decomposition(L);
  } catch (const std::runtime_error&) {
    return false;
  }
  // Any nonzero ideal is graded by the Cartan action, so it meets a root
  // space or the joint kernel of the root functionals inside H.
  std::vector<SVec> seeds;
  for (size_t p = 0; p < rd.roots.size(); ++p) {
    if (p == rd.zero_index) continue;
    for (const SVec& v : rd.spaces[p]) seeds.push_back(v);
  }
  {
    size_t r = L.cartan().size();
    QMat rows(rd.roots.size(), r);
    for (size_t i = 0; i < rd.roots.size(); ++i)
      for (size_t j = 0; j < r; ++j) rows.at(i, j) = rd.roots[i][j];
    for (const QVec& y : kernel_basis(rows)) {
      SVec v(n);
      for (size_t j = 0; j < r; ++j)
        v = vec_add(v, vec_scale(L.basis_vector(L.cartan()[j]), Scalar(y[j])));
      if (!is_zero_vec(v)) seeds.push_back(std::move(v));
    }
  }
  if (seeds.empty()) return false;  // abelian
  std::vector<SVec> all;
  for (size_t i = 0; i < n; ++i) all.push_back(L.basis_vector(i));
  for (const SVec& seed : seeds) {
    // Close the seed under bracketing with the whole algebra.
    std::vector<SVec> ideal = {seed};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<SVec> add;
      for (const SVec& u : ideal)
        for (const SVec& x : all) {
          SVec v = L.bracket(x, u);
          if (!is_zero_vec(v) && !in_span(ideal, v)) add.push_back(v);
        }
      if (!add.empty()) {
        std::vector<SVec> join = ideal;
        join.insert(join.end(), add.begin(), add.end());
        ideal = span_basis(join, n);
        grew = true;
      }
    }
    if (ideal.size() < n) return false;
  }
  return true;
}

SVec GrlaHandle::t_of(const QVec& root) const {
  SVec coeff = mat_vec(t_map, rational_to_scalar_vec(root));
  SVec out(dim);
  for (size_t i = 0; i < cartan.size(); ++i) out = vec_add(out, vec_scale(cartan[i], coeff[i]));
  return out;
}

const std::vector<SVec>* GrlaHandle::space_of(const QVec& root) const {
  for (const auto& [r, basis] : spaces)
    if (r == root) return &basis;
  return nullptr;
}

GrlaHandle make_handle(const StructLieAlgebra& L) {
  RootDecomposition rd = root_decomposition(L);
  auto [pres, coords] = induced_presentation(L, rd);
  GrlaHandle h{.dim = L.dim(),
               .bracket = [L](const SVec& x, const SVec& y) -> std::optional<SVec> {
                 return L.bracket(x, y);
               },
               .form = [L](const SVec& x, const SVec& y) { return L.pair(x, y); },
               .cartan = {},
               .pres = std::move(pres),
               .spaces = {},
               .t_map = SMat(),
               .window = 2};
  size_t r = L.cartan().size();
  for (size_t i = 0; i < r; ++i) h.cartan.push_back(L.basis_vector(L.cartan()[i]));
  for (size_t p = 0; p < rd.roots.size(); ++p) h.spaces.push_back({coords[p], rd.spaces[p]});

  // t_map columns: representatives of the basis functionals over the Cartan
  // basis.  Basis functional j has presentation coordinates e_j.
  size_t s = h.pres.ambient_dim();
  SMat hgram(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      hgram.at(i, j) = L.form_matrix().at(L.cartan()[i], L.cartan()[j]);
  // Recover each basis functional's values on the Cartan basis by inverting
  // the coordinates of any root with a pivot there; instead solve directly:
  // stack root coords against functional values.
  SMat t_map(r, s);
  for (size_t j = 0; j < s; ++j) {
    // Find the functional values of basis vector j: solve coords^T a = e_j in
    // the least-structured way -- basis functionals are rref rows of the
    // roots, so reconstruct them from any root expansion.
    // Simpler: basis row j as a functional equals sum over roots is not
    // needed; induced_presentation built coords so that root = B^T coords.
    // Column j of B^T is the functional of e_j.
    QVec func(r);
    // Recompute the rref rows exactly as induced_presentation does.
    // (kept in lockstep with induced_presentation)
    QMat stacked(rd.roots.size(), r);
    for (size_t i = 0; i < rd.roots.size(); ++i)
      for (size_t q = 0; q < r; ++q) stacked.at(i, q) = rd.roots[i][q];
    rref(stacked);
    func = stacked.row(j);
    auto xi = solve_linear(hgram, rational_to_scalar_vec(func));
    if (!xi) throw NoDualBasis("form degenerate on the Cartan part");
    for (size_t i = 0; i < r; ++i) t_map.at(i, j) = (*xi)[i];
  }
  h.t_map = std::move(t_map);
  return h;
}

std::vector<SVec> span_intersect(const std::vector<SVec>& a, const std::vector<SVec>& b,
                                 size_t dim) {
  if (a.empty() || b.empty()) return {};
  SMat m(dim, a.size() + b.size());
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t i = 0; i < dim; ++i) m.at(i, j) = a[j][i];
  for (size_t j = 0; j < b.size(); ++j)
    for (size_t i = 0; i < dim; ++i) m.at(i, a.size() + j) = -b[j][i];
  std::vector<SVec> out;
  for (const SVec& y : kernel_basis(m)) {
    SVec v(dim);
    for (size_t j = 0; j < a.size(); ++j) v = vec_add(v, vec_scale(a[j], y[j]));
    out.push_back(std::move(v));
  }
  return span_basis(out, dim);
}

namespace {

QVec qvec_add(QVec a, const QVec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

bool qvec_zero(const QVec& v) { return is_zero_vec(v); }

}  // namespace

IntrinsicDecomposition intrinsic_decomposition(const GrlaHandle& h) {
  size_t n = h.dim;
  size_t r = h.cartan.size();
  DecompositionResult dec = decompose(h.pres, h.window);
  IntrinsicDecomposition out;

  // Per-component generator sets for the two halves of H it owns.
  std::vector<std::vector<SVec>> hdot_gens(dec.components.size());
  std::vector<std::vector<SVec>> h0_gens(dec.components.size());
  for (size_t ci = 0; ci < dec.components.size(); ++ci) {
    const GrrsComponent& comp = dec.components[ci];
    for (size_t fi : comp.r.nonisotropic()) {
      const QVec& base = comp.r.families()[fi].base;
      QVec dotted = vec_sub(base, project_null(base, h.pres));
      hdot_gens[ci].push_back(h.t_of(dotted));
    }
    IntLattice lat = comp.r_prime.isotropic_support().zspan();
    for (size_t row = 0; row < lat.rank(); ++row) {
      IntVec lam = lat.basis().row(row);
      h0_gens[ci].push_back(h.t_of(h.pres.embedded(lam)));
    }
  }

  // Basis B of the total isotropic representative span, component-first so
  // every component's part gets a sub-basis.
  std::vector<SVec> b_vecs;
  for (size_t ci = 0; ci < dec.components.size(); ++ci)
    for (const SVec& g : h0_gens[ci])
      if (!in_span(b_vecs, g)) b_vecs.push_back(g);
  std::vector<SVec> hdot_all;
  for (const auto& gens : hdot_gens)
    for (const SVec& g : gens) hdot_all.push_back(g);
  hdot_all = span_basis(hdot_all, n);

  // The representatives of isotropic roots must pair to zero among
  // themselves; otherwise the dual-basis construction is unsound.
  for (const SVec& x : b_vecs)
    for (const SVec& y : b_vecs)
      if (!h.form(x, y).is_zero())
        throw NoDualBasis("isotropic representatives do not pair to zero");

  // Dual partners: first solve (d', b_l) = delta_jl with (d', hdot) = 0, then
  // subtract half the mutual pairings to make the partners pair to zero.
  size_t m = b_vecs.size();
  std::vector<SVec> d_raw;
  for (size_t j = 0; j < m; ++j) {
    SMat a(m + hdot_all.size(), r);
    SVec rhs(m + hdot_all.size());
    for (size_t l = 0; l < m; ++l) {
      for (size_t i = 0; i < r; ++i) a.at(l, i) = h.form(h.cartan[i], b_vecs[l]);
      rhs[l] = Scalar(l == j ? 1 : 0);
    }
    for (size_t l = 0; l < hdot_all.size(); ++l)
      for (size_t i = 0; i < r; ++i) a.at(m + l, i) = h.form(h.cartan[i], hdot_all[l]);
    auto xi = solve_linear(a, rhs);
    if (!xi) throw NoDualBasis("no dual partner for an isotropic representative");
    SVec d(n);
    for (size_t i = 0; i < r; ++i) d = vec_add(d, vec_scale(h.cartan[i], (*xi)[i]));
    d_raw.push_back(std::move(d));
  }
  std::vector<SVec> d_vecs = d_raw;
  Scalar half = Scalar(1) / Scalar(2);
  for (size_t j = 0; j < m; ++j)
    for (size_t l = 0; l < m; ++l) {
      Scalar p = h.form(d_raw[j], d_raw[l]);
      if (!p.is_zero()) d_vecs[j] = vec_sub(d_vecs[j], vec_scale(b_vecs[l], half * p));
    }
  for (size_t j = 0; j < m; ++j)
    for (size_t l = 0; l < m; ++l) {
      if (!h.form(d_vecs[j], d_vecs[l]).is_zero())
        throw NoDualBasis("dual partners fail to pair to zero");
      Scalar p = h.form(d_vecs[j], b_vecs[l]);
      if (p != Scalar(j == l ? 1 : 0)) throw NoDualBasis("dual pairing is not unimodular");
    }

  // W: the part of H orthogonal to everything constructed so far.
  {
    std::vector<SVec> against = hdot_all;
    against.insert(against.end(), b_vecs.begin(), b_vecs.end());
    against.insert(against.end(), d_vecs.begin(), d_vecs.end());
    SMat a(against.size(), r);
    for (size_t l = 0; l < against.size(); ++l)
      for (size_t i = 0; i < r; ++i) a.at(l, i) = h.form(h.cartan[i], against[l]);
    std::vector<SVec> w;
    for (const SVec& y : kernel_basis(a)) {
      SVec v(n);
      for (size_t i = 0; i < r; ++i) v = vec_add(v, vec_scale(h.cartan[i], y[i]));
      w.push_back(std::move(v));
    }
    out.w = span_basis(w, n);
  }

  // Assemble the components.
  for (size_t ci = 0; ci < dec.components.size(); ++ci) {
    const GrrsComponent& comp = dec.components[ci];
    IntrinsicComponent ic;
    ic.type = comp.type;
    ic.rank = comp.rank;
    ic.h_dot = span_basis(hdot_gens[ci], n);
    ic.h0 = span_basis(h0_gens[ci], n);
    for (size_t j = 0; j < m; ++j)
      if (in_span(ic.h0, b_vecs[j])) ic.d.push_back(d_vecs[j]);

    std::vector<SVec> gi = hdot_gens[ci];
    gi.insert(gi.end(), h0_gens[ci].begin(), h0_gens[ci].end());
    gi.insert(gi.end(), ic.d.begin(), ic.d.end());
    std::vector<SVec> core_gens;
    std::vector<std::pair<QVec, const std::vector<SVec>*>> noniso_spaces;
    for (const auto& [root, basis] : h.spaces) {
      if (qvec_zero(root)) continue;
      if (grrs_member(root, comp.r_prime))
        for (const SVec& v : basis) gi.push_back(v);
      if (grrs_member(root, comp.r) && !grrs_form(root, root, h.pres).is_zero()) {
        noniso_spaces.push_back({root, &basis});
        for (const SVec& v : basis) core_gens.push_back(v);
      }
    }
    ic.gi = span_basis(gi, n);
    ic.gi_core = bracket_closure(core_gens, n, h.bracket);

    // dim of the sum of [G_a, G_-a] over nonisotropic roots of the component.
    std::vector<SVec> cap;
    for (const auto& [root, basis] : noniso_spaces) {
      QVec neg(root.size());
      for (size_t i = 0; i < root.size(); ++i) neg[i] = -root[i];
      const std::vector<SVec>* opp = h.space_of(neg);
      if (!opp) continue;
      for (const SVec& x : *basis)
        for (const SVec& y : *opp) {
          auto v = h.bracket(x, y);
          if (v) cap.push_back(*v);
        }
    }
    ic.dim_core_cap_h = span_basis(cap, n).size();
    ic.dim_d_ok = static_cast<long>(ic.d.size()) ==
                  static_cast<long>(ic.dim_core_cap_h) - static_cast<long>(ic.rank);
    out.components.push_back(std::move(ic));
  }

  // Spaces of roots outside every component.
  for (const auto& [root, basis] : h.spaces) {
    if (qvec_zero(root) || !grrs_form(root, root, h.pres).is_zero()) continue;
    auto lam = h.pres.embed_preimage(root);
    if (lam && dec.r0_0.member(*lam))
      for (const SVec& v : basis) out.isolated.push_back(v);
  }
  out.isolated = span_basis(out.isolated, n);

  // Cross-component cores commute.
  for (size_t i = 0; i < out.components.size() && out.cross_core_commute.pass; ++i)
    for (size_t j = i + 1; j < out.components.size() && out.cross_core_commute.pass; ++j)
      for (const SVec& x : out.components[i].gi_core)
        for (const SVec& y : out.components[j].gi_core) {
          auto v = h.bracket(x, y);
          if (v && !is_zero_vec(*v)) {
            out.cross_core_commute = {false, "cores of distinct components fail to commute"};
            break;
          }
        }
  // W centralizes every component subalgebra.
  for (const SVec& w : out.w)
    for (const auto& ic : out.components)
      for (const SVec& g : ic.gi) {
        auto v = h.bracket(w, g);
        if (v && !is_zero_vec(*v))
          out.w_centralizes = {false, "orthogonal remainder acts on a component"};
      }
  // Isolated spaces centralize the core.
  for (const SVec& x : out.isolated)
    for (const auto& ic : out.components)
      for (const SVec& y : ic.gi_core) {
        auto v = h.bracket(x, y);
        if (v && !is_zero_vec(*v))
          out.isolated_centralize_core = {false, "isolated space acts on the core"};
      }

  // Cross-component brackets land where the decomposition allows: in the
  // shared isotropic representatives, in root spaces with nonzero radical
  // part, or in brackets of a nonisotropic against an isotropic root space.
  for (size_t i = 0; i < out.components.size() && out.cross_bracket_containment.pass; ++i)
    for (size_t j = 0; j < out.components.size(); ++j) {
      if (i == j) continue;
      const GrrsComponent& ci = dec.components[i];
      const GrrsComponent& cj = dec.components[j];
      std::vector<SVec> shared = span_intersect(out.components[i].h0, out.components[j].h0, n);
      std::vector<SVec> hi = out.components[i].h_dot;
      hi.insert(hi.end(), out.components[i].h0.begin(), out.components[i].h0.end());
      hi.insert(hi.end(), out.components[i].d.begin(), out.components[i].d.end());
      for (const auto& [rho, xs] : h.spaces) {
        if (qvec_zero(rho) || !grrs_member(rho, ci.r_prime)) continue;
        bool rho_iso = grrs_form(rho, rho, h.pres).is_zero();
        for (const auto& [sig, ys] : h.spaces) {
          if (qvec_zero(sig) || !grrs_member(sig, cj.r_prime)) continue;
          bool sig_iso = grrs_form(sig, sig, h.pres).is_zero();
          QVec sum = qvec_add(rho, sig);
          bool opposite = qvec_zero(sum);
          bool sum_allowed = false;
          if (!opposite) {
            bool sum_root = grrs_member(sum, h.pres);
            bool sum_radical = sum_root && !qvec_zero(project_null(sum, h.pres)) &&
                               (grrs_member(sum, ci.r_prime) || grrs_member(sum, cj.r_prime));
            sum_allowed = sum_radical || (rho_iso != sig_iso);
          }
          for (const SVec& x : xs)
            for (const SVec& y : ys) {
              auto v = h.bracket(x, y);
              if (!v || is_zero_vec(*v)) continue;
              bool ok = opposite ? in_span(shared, *v) : sum_allowed;
              if (!ok) {
                out.cross_bracket_containment = {
                    false, "cross-component bracket escapes the allowed spaces"};
              }
            }
        }
      }
      // H_i against a root space of another component must vanish unless the
      // root has a nonzero radical part.
      for (const auto& [sig, ys] : h.spaces) {
        if (qvec_zero(sig) || !grrs_member(sig, cj.r_prime)) continue;
        if (!qvec_zero(project_null(sig, h.pres))) continue;
        for (const SVec& x : hi)
          for (const SVec& y : ys) {
            auto v = h.bracket(x, y);
            if (v && !is_zero_vec(*v))
              out.cross_bracket_containment = {
                  false, "component Cartan acts across components without radical part"};
          }
      }
    }
  return out;
}

}  // namespace grla
