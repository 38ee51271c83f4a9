#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "grla/rational.hpp"

namespace grla {

struct UnsupportedOrder : std::runtime_error {
  explicit UnsupportedOrder(int m)
      : std::runtime_error("cyclotomic order " + std::to_string(m) + " not supported (max 12)") {}
};

struct BadScalar : std::runtime_error {
  explicit BadScalar(const std::string& what) : std::runtime_error("bad scalar: " + what) {}
};

int euler_phi(int m);

/// Coefficients of the m-th cyclotomic polynomial, constant term first,
/// including the leading 1.  Supported for 1 <= m <= 12.
const std::vector<long>& cyclotomic_poly(int m);

/// Element of Q(zeta_m), m <= 12, stored as the canonical residue modulo the
/// m-th cyclotomic polynomial.  Order 1 and 2 values are plain rationals
/// (order_ == 1).  Values of different orders promote to the lcm on mixed
/// arithmetic.
class Scalar {
 public:
  Scalar() : order_(1), coeffs_{Rational()} {}
  Scalar(const Rational& r) : order_(1), coeffs_{r} {}  // NOLINT
  Scalar(long long n) : order_(1), coeffs_{Rational(n)} {}  // NOLINT

  /// Canonical residue of sum_i poly[i] * zeta_m^i.
  Scalar(int m, std::vector<Rational> poly);

  /// zeta_m itself.
  static Scalar root_of_unity(int m) {
    return Scalar(m, {Rational(0), Rational(1)});
  }

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return order_ == 1; }

  /// The rational value; throws if the scalar is not rational.
  const Rational& rat() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inv() const;
  Scalar pow(long long e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "p/q" for rationals, otherwise a "+"-joined sum of "c*z^k" terms.
  std::string str() const;

  /// Parses "p/q", "z", "z^k", "c*z^k" and +/- sums thereof; z is zeta_m.
  static Scalar parse(const std::string& text, int m = 1);

 private:
  void normalize();

  int order_;
  std::vector<Rational> coeffs_;  // length euler_phi(order_)
};

inline Scalar cyclo_normalize(std::vector<Rational> poly, int m) {
  return Scalar(m, std::move(poly));
}

}  // namespace grla
