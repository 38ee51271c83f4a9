#pragma once

#include <optional>
#include <vector>

#include "grla/linalg.hpp"
#include "grla/rational.hpp"

namespace grla {

using IntVec = std::vector<BigInt>;

/// Dense row-major integer matrix.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMat(size_t rows, size_t cols, std::vector<BigInt> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionMismatch("integer matrix entry count");
  }

  static IntMat identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMat from_rows(const std::vector<IntVec>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  BigInt& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const BigInt& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(size_t i) const {
    return IntVec(a_.begin() + static_cast<long>(i * cols_),
                  a_.begin() + static_cast<long>((i + 1) * cols_));
  }

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  size_t rows_, cols_;
  std::vector<BigInt> a_;
};

IntMat int_mat_mul(const IntMat& a, const IntMat& b);
IntVec int_mat_vec(const IntMat& m, const IntVec& v);
IntVec int_vec_mat(const IntVec& v, const IntMat& m);

struct HnfResult {
  IntMat h;  // row-style HNF, zero rows at the bottom
  IntMat u;  // unimodular, u * a = h
  std::vector<size_t> pivot_cols;
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), pivot columns strictly increasing.
HnfResult hermite_normal_form(const IntMat& a);

struct SnfResult {
  IntMat s;  // diagonal, d1 | d2 | ..., nonnegative
  IntMat u;  // unimodular, u * a * v = s
  IntMat v;
};

SnfResult smith_normal_form(const IntMat& a);

/// Solves x * a = b over the integers (row convention); one solution or absent.
std::optional<IntVec> int_solve_left(const IntMat& a, const IntVec& b);

/// Basis of {x : x * a = 0} over the integers.
std::vector<IntVec> int_left_kernel(const IntMat& a);

BigInt det_unimodular_abs(const IntMat& u);

}  // namespace grla
