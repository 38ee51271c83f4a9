#include "grla/intmat.hpp"

namespace grla {

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, size_t cols) {
  IntMat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("from_rows");
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("int_mat_mul");
  IntMat out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

IntVec int_mat_vec(const IntMat& m, const IntVec& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("int_mat_vec");
  IntVec out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

IntVec int_vec_mat(const IntVec& v, const IntMat& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("int_vec_mat");
  IntVec out(m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m.at(i, j);
  }
  return out;
}

namespace {

void swap_rows(IntMat& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void add_row_multiple(IntMat& m, size_t dst, size_t src, const BigInt& f) {
  if (f == 0) return;
  for (size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += f * m.at(src, j);
}

void negate_row(IntMat& m, size_t r) {
  for (size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace

HnfResult hermite_normal_form(const IntMat& a) {
  HnfResult res{a, IntMat::identity(a.rows()), {}};
  IntMat& h = res.h;
  IntMat& u = res.u;
  size_t r = 0;
  for (size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Gcd elimination within column c on rows r..end.
    for (;;) {
      size_t best = h.rows();
      for (size_t i = r; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        if (best == h.rows() ||
            boost::multiprecision::abs(h.at(i, c)) < boost::multiprecision::abs(h.at(best, c)))
          best = i;
      }
      if (best == h.rows()) break;  // column clear
      swap_rows(h, r, best);
      swap_rows(u, r, best);
      bool done = true;
      for (size_t i = r + 1; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        BigInt q = h.at(i, c) / h.at(r, c);  // truncated division is fine here
        add_row_multiple(h, i, r, -q);
        add_row_multiple(u, i, r, -q);
        if (h.at(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    // Reduce entries above the pivot into [0, pivot).
    for (size_t i = 0; i < r; ++i) {
      BigInt q = h.at(i, c) / h.at(r, c);
      if (h.at(i, c) - q * h.at(r, c) < 0) q -= 1;
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  return res;
}

SnfResult smith_normal_form(const IntMat& a) {
  SnfResult res{a, IntMat::identity(a.rows()), IntMat::identity(a.cols())};
  IntMat& s = res.s;
  IntMat& u = res.u;
  IntMat& v = res.v;

  auto swap_cols = [&](IntMat& m, size_t x, size_t y) {
    if (x == y) return;
    for (size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, x), m.at(i, y));
  };
  auto add_col_multiple = [&](IntMat& m, size_t dst, size_t src, const BigInt& f) {
    if (f == 0) return;
    for (size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += f * m.at(i, src);
  };

  const size_t n = std::min(s.rows(), s.cols());
  for (size_t k = 0; k < n; ++k) {
    // Move a minimal nonzero entry of the trailing block to (k, k) and clear
    // its row and column; restart whenever a new smaller remainder appears.
    for (;;) {
      size_t pi = s.rows(), pj = 0;
      for (size_t i = k; i < s.rows(); ++i)
        for (size_t j = k; j < s.cols(); ++j) {
          if (s.at(i, j) == 0) continue;
          if (pi == s.rows() || boost::multiprecision::abs(s.at(i, j)) <
                                    boost::multiprecision::abs(s.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == s.rows()) goto finished;  // trailing block is zero
      swap_rows(s, k, pi);
      swap_rows(u, k, pi);
      swap_cols(s, k, pj);
      swap_cols(v, k, pj);
      bool clean = true;
      for (size_t i = k + 1; i < s.rows(); ++i) {
        BigInt q = s.at(i, k) / s.at(k, k);
        add_row_multiple(s, i, k, -q);
        add_row_multiple(u, i, k, -q);
        if (s.at(i, k) != 0) clean = false;
      }
      for (size_t j = k + 1; j < s.cols(); ++j) {
        BigInt q = s.at(k, j) / s.at(k, k);
        add_col_multiple(s, j, k, -q);
        add_col_multiple(v, j, k, -q);
        if (s.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility: s[k][k] must divide every later entry.
      bool divides = true;
      for (size_t i = k + 1; i < s.rows() && divides; ++i)
        for (size_t j = k + 1; j < s.cols() && divides; ++j)
          if (s.at(i, j) % s.at(k, k) != 0) {
            add_row_multiple(s, k, i, 1);
            add_row_multiple(u, k, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (s.at(k, k) < 0) {
      negate_row(s, k);
      negate_row(u, k);
    }
  }
finished:
  return res;
}

std::optional<IntVec> int_solve_left(const IntMat& a, const IntVec& b) {
  if (b.size() != a.cols()) throw DimensionMismatch("int_solve_left");
  auto hnf = hermite_normal_form(a);
  IntVec rem = b;
  IntVec y(a.rows());
  for (size_t r = 0; r < hnf.pivot_cols.size(); ++r) {
    size_t c = hnf.pivot_cols[r];
    // Columns left of c must already be cleared.
    if (rem[c] % hnf.h.at(r, c) != 0) return std::nullopt;
    BigInt q = rem[c] / hnf.h.at(r, c);
    y[r] = q;
    if (q != 0)
      for (size_t j = 0; j < a.cols(); ++j) rem[j] -= q * hnf.h.at(r, j);
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return int_vec_mat(y, hnf.u);
}

std::vector<IntVec> int_left_kernel(const IntMat& a) {
  auto hnf = hermite_normal_form(a);
  std::vector<IntVec> out;
  for (size_t r = hnf.pivot_cols.size(); r < a.rows(); ++r) out.push_back(hnf.u.row(r));
  return out;
}

BigInt det_unimodular_abs(const IntMat& u) {
  // Determinant by fraction-free elimination; used only in tests.
  if (u.rows() != u.cols()) throw DimensionMismatch("det");
  if (u.rows() == 0) return 1;
  IntMat m = u;
  BigInt det = 1, denom = 1;
  for (size_t k = 0; k < m.rows(); ++k) {
    size_t p = k;
    while (p < m.rows() && m.at(p, k) == 0) ++p;
    if (p == m.rows()) return 0;
    if (p != k) {
      swap_rows(m, p, k);
      det = -det;
    }
    for (size_t i = k + 1; i < m.rows(); ++i)
      for (size_t j = k + 1; j < m.cols(); ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / denom;
    denom = m.at(k, k);
  }
  det *= m.at(m.rows() - 1, m.rows() - 1);
  return boost::multiprecision::abs(det);
}

}  // namespace grla
