#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grla/scalar.hpp"

namespace grla {

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what)
      : std::runtime_error("dimension mismatch: " + what) {}
};

struct NotSymmetric : std::runtime_error {
  NotSymmetric() : std::runtime_error("matrix is not symmetric") {}
};

template <class F>
using Vec = std::vector<F>;

/// Dense row-major matrix over an exact field.
template <class F>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Mat(size_t rows, size_t cols, std::vector<F> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionMismatch("matrix entry count");
  }

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  F& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const F& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Vec<F> row(size_t i) const {
    return Vec<F>(a_.begin() + static_cast<long>(i * cols_),
                  a_.begin() + static_cast<long>((i + 1) * cols_));
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = i + 1; j < cols_; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  size_t rows_, cols_;
  std::vector<F> a_;
};

using QMat = Mat<Rational>;
using QVec = Vec<Rational>;
using SMat = Mat<Scalar>;
using SVec = Vec<Scalar>;

template <class F>
Vec<F> mat_vec(const Mat<F>& m, const Vec<F>& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("mat_vec");
  Vec<F> out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

template <class F>
Mat<F> mat_mul(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul");
  Mat<F> out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == F(0)) continue;
      for (size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot");
  F out{};
  for (size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

/// v^T G w.
template <class F>
F form_value(const Mat<F>& gram, const Vec<F>& v, const Vec<F>& w) {
  return dot(v, mat_vec(gram, w));
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  for (const auto& x : v)
    if (!(x == F(0))) return false;
  return true;
}

template <class F>
Vec<F> vec_add(Vec<F> a, const Vec<F>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class F>
Vec<F> vec_sub(Vec<F> a, const Vec<F>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class F>
Vec<F> vec_scale(Vec<F> a, const F& c) {
  for (auto& x : a) x *= c;
  return a;
}

/// In-place reduction to reduced row echelon form with deterministic pivoting
/// (first nonzero entry in column order).  Returns the pivot columns.
template <class F>
std::vector<size_t> rref(Mat<F>& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m.at(p, c) == F(0)) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    F inv = F(1) / m.at(r, c);
    for (size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == F(0)) continue;
      F f = m.at(i, c);
      for (size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
size_t rank(Mat<F> m) {
  return rref(m).size();
}

/// Basis of the null space {v : M v = 0}, ordered by free column.
template <class F>
std::vector<Vec<F>> kernel_basis(Mat<F> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols());
    v[free] = F(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of A x = b with free variables set to zero, or absent.
template <class F>
std::optional<Vec<F>> solve_linear(const Mat<F>& a, const Vec<F>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_linear");
  Mat<F> aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
  Vec<F> x(a.cols());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols());
  return x;
}

/// Spans-equal test for two row families.
template <class F>
bool same_span(const std::vector<Vec<F>>& a, const std::vector<Vec<F>>& b, size_t dim) {
  auto stack = [&](const std::vector<Vec<F>>& rows) {
    Mat<F> m(rows.size(), dim);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
    return m;
  };
  size_t ra = rank(stack(a)), rb = rank(stack(b));
  std::vector<Vec<F>> all = a;
  all.insert(all.end(), b.begin(), b.end());
  size_t rall = rank(stack(all));
  return ra == rb && rb == rall;
}

/// Is v in the span of the given rows?
template <class F>
bool in_span(const std::vector<Vec<F>>& rows, const Vec<F>& v) {
  if (rows.empty()) return is_zero_vec(v);
  Mat<F> m(v.size(), rows.size());
  for (size_t j = 0; j < rows.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) m.at(i, j) = rows[j][i];
  return solve_linear(m, v).has_value();
}

/// Exact positive semidefiniteness of a symmetric rational matrix via pivoted
/// LDL^T elimination.  On failure returns a witness v with v^T G v < 0.
std::pair<bool, std::optional<QVec>> is_positive_semidefinite(const QMat& gram);

}  // namespace grla
