#include "grla/linalg.hpp"

namespace grla {

std::pair<bool, std::optional<QVec>> is_positive_semidefinite(const QMat& gram) {
  if (!gram.is_symmetric()) throw NotSymmetric();
  const size_t n = gram.rows();
  QMat a = gram;
  std::vector<bool> active(n, true);

  struct Step {
    size_t pivot;
    QVec column;  // full-size, entries at then-active indices
    Rational d;
  };
  std::vector<Step> steps;

  auto lift = [&](QVec w) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      Rational s;
      for (size_t j = 0; j < n; ++j) s += it->column[j] * w[j];
      w[it->pivot] = -s / it->d;
    }
    return w;
  };

  for (;;) {
    // A negative diagonal entry is an immediate witness.
    for (size_t i = 0; i < n; ++i) {
      if (active[i] && a.at(i, i) < Rational(0)) {
        QVec w(n);
        w[i] = Rational(1);
        return {false, lift(std::move(w))};
      }
    }
    size_t pivot = n;
    for (size_t i = 0; i < n; ++i) {
      if (active[i] && a.at(i, i).sign() > 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      // All active diagonals vanish; any off-diagonal nonzero kills psd.
      for (size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (size_t j = i + 1; j < n; ++j) {
          if (!active[j] || a.at(i, j).is_zero()) continue;
          QVec w(n);
          w[i] = Rational(1);
          w[j] = a.at(i, j) > Rational(0) ? Rational(-1) : Rational(1);
          return {false, lift(std::move(w))};
        }
      }
      return {true, std::nullopt};
    }
    Step step{pivot, QVec(n), a.at(pivot, pivot)};
    for (size_t j = 0; j < n; ++j)
      if (active[j] && j != pivot) step.column[j] = a.at(j, pivot);
    active[pivot] = false;
    for (size_t i = 0; i < n; ++i) {
      if (!active[i] || step.column[i].is_zero()) continue;
      Rational f = step.column[i] / step.d;
      for (size_t j = 0; j < n; ++j)
        if (active[j]) a.at(i, j) -= f * a.at(pivot, j);
    }
    steps.push_back(std::move(step));
  }
}

}  // namespace grla
