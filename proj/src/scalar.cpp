#include "grla/scalar.hpp"

#include <algorithm>
#include <numeric>

namespace grla {

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { throw BadScalar(text); };
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<long>& cyclotomic_poly(int m) {
  static const std::vector<std::vector<long>> table = {
      {},                                    // m = 0 unused
      {-1, 1},                               // x - 1
      {1, 1},                                // x + 1
      {1, 1, 1},                             // x^2 + x + 1
      {1, 0, 1},                             // x^2 + 1
      {1, 1, 1, 1, 1},                       // x^4 + ... + 1
      {1, -1, 1},                            // x^2 - x + 1
      {1, 1, 1, 1, 1, 1, 1},                 // x^6 + ... + 1
      {1, 0, 0, 0, 1},                       // x^4 + 1
      {1, 0, 0, 1, 0, 0, 1},                 // x^6 + x^3 + 1
      {1, -1, 1, -1, 1},                     // x^4 - x^3 + x^2 - x + 1
      {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},     // x^10 + ... + 1
      {1, 0, -1, 0, 1},                      // x^4 - x^2 + 1
  };
  if (m < 1 || m > 12) throw UnsupportedOrder(m);
  return table[static_cast<size_t>(m)];
}

namespace {

// Remainder of poly modulo the monic m-th cyclotomic polynomial.
std::vector<Rational> reduce_mod_cyclo(std::vector<Rational> poly, int m) {
  const auto& phi = cyclotomic_poly(m);
  const size_t deg = phi.size() - 1;
  while (poly.size() > deg) {
    Rational lead = poly.back();
    size_t top = poly.size() - 1;
    poly.pop_back();
    if (lead.is_zero()) continue;
    for (size_t i = 0; i < deg; ++i)
      poly[top - deg + i] -= lead * Rational(phi[i]);
  }
  poly.resize(deg, Rational());
  return poly;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

Scalar::Scalar(int m, std::vector<Rational> poly) : order_(m) {
  if (m < 1 || m > 12) throw UnsupportedOrder(m);
  if (m == 1) {
    // zeta_1 = 1: sum the coefficients.
    Rational sum;
    for (const auto& c : poly) sum += c;
    coeffs_ = {sum};
    return;
  }
  if (m == 2) {
    // zeta_2 = -1.
    Rational sum;
    for (size_t i = 0; i < poly.size(); ++i)
      sum += (i % 2 == 0) ? poly[i] : -poly[i];
    order_ = 1;
    coeffs_ = {sum};
    return;
  }
  coeffs_ = reduce_mod_cyclo(std::move(poly), m);
  normalize();
}

void Scalar::normalize() {
  if (order_ == 1) return;
  bool constant = std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                              [](const Rational& c) { return c.is_zero(); });
  if (constant) {
    coeffs_.resize(1);
    order_ = 1;
  }
}

bool Scalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.is_zero(); });
}

const Rational& Scalar::rat() const {
  if (order_ != 1) throw BadScalar("value is not rational: " + str());
  return coeffs_[0];
}

namespace {

// Rewrites a in Q(zeta_M), m | M.
std::vector<Rational> embed_coeffs(const Scalar& a, int M) {
  int step = M / a.order();
  std::vector<Rational> poly(static_cast<size_t>((a.coeffs().size() - 1) * step + 1));
  for (size_t i = 0; i < a.coeffs().size(); ++i) poly[i * step] = a.coeffs()[i];
  return poly;
}

int common_order(const Scalar& a, const Scalar& b) {
  return std::lcm(a.order(), b.order());
}

}  // namespace

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  int M = common_order(a, b);
  auto pa = embed_coeffs(a, M), pb = embed_coeffs(b, M);
  if (pa.size() < pb.size()) pa.resize(pb.size());
  for (size_t i = 0; i < pb.size(); ++i) pa[i] += pb[i];
  return Scalar(M, std::move(pa));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  int M = common_order(a, b);
  return Scalar(M, poly_mul(embed_coeffs(a, M), embed_coeffs(b, M)));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (order_ == 1) return Scalar(coeffs_[0].inv());
  // Extended Euclid in Q[x] against the (irreducible) cyclotomic polynomial.
  // Invariant: s_i * (*this) = r_i  (mod Phi_m).
  const auto& phi_l = cyclotomic_poly(order_);
  std::vector<Rational> r0(phi_l.size());
  for (size_t i = 0; i < phi_l.size(); ++i) r0[i] = Rational(phi_l[i]);
  std::vector<Rational> r1 = coeffs_;
  while (!r1.empty() && r1.back().is_zero()) r1.pop_back();
  std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};

  auto deg = [](const std::vector<Rational>& p) { return static_cast<long>(p.size()) - 1; };
  while (deg(r1) > 0) {
    // r0 = q*r1 + r2
    std::vector<Rational> q(static_cast<size_t>(deg(r0) - deg(r1) + 1));
    std::vector<Rational> r2 = r0;
    for (long d = deg(r0); d >= deg(r1); --d) {
      Rational f = r2[static_cast<size_t>(d)] / r1.back();
      q[static_cast<size_t>(d - deg(r1))] = f;
      for (size_t i = 0; i < r1.size(); ++i)
        r2[static_cast<size_t>(d) - r1.size() + 1 + i] -= f * r1[i];
    }
    while (!r2.empty() && r2.back().is_zero()) r2.pop_back();
    // s2 = s0 - q*s1
    std::vector<Rational> s2 = s0;
    std::vector<Rational> qs = poly_mul(q, s1);
    if (s2.size() < qs.size()) s2.resize(qs.size());
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::logic_error("cyclotomic polynomial not coprime to nonzero element");
  // s1 * (*this) = r1, a nonzero constant.
  Rational g = r1[0];
  for (auto& c : s1) c /= g;
  return Scalar(order_, std::move(s1));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.order() == b.order()) return a.coeffs() == b.coeffs();
  int M = common_order(a, b);
  return Scalar(M, embed_coeffs(a, M)) == Scalar(M, embed_coeffs(b, M));
}

std::string Scalar::str() const {
  if (order_ == 1) return coeffs_[0].str();
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += coeffs_[i].str();
    } else {
      out += coeffs_[i].str() + "*z";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar Scalar::parse(const std::string& text, int m) {
  // Split into signed terms at top level.
  std::vector<std::pair<int, std::string>> terms;
  std::string cur;
  int sign = 1;
  bool at_term_start = true;
  for (char c : text) {
    if (isspace(static_cast<unsigned char>(c))) continue;
    if ((c == '+' || c == '-') && !at_term_start && cur.back() != '^' && cur.back() != '*' &&
        cur.back() != '/') {
      terms.emplace_back(sign, cur);
      cur.clear();
      sign = (c == '-') ? -1 : 1;
      at_term_start = true;
      continue;
    }
    if (at_term_start && (c == '+' || c == '-')) {
      if (c == '-') sign = -sign;
      continue;
    }
    cur += c;
    at_term_start = false;
  }
  if (!cur.empty()) terms.emplace_back(sign, cur);
  if (terms.empty()) throw BadScalar(text);

  Scalar total(0);
  for (auto& [sg, term] : terms) {
    Rational coeff(1);
    int power = 0;
    auto star = term.find('*');
    std::string zpart = term;
    if (star != std::string::npos) {
      coeff = Rational::parse(term.substr(0, star));
      zpart = term.substr(star + 1);
    }
    if (!zpart.empty() && zpart[0] == 'z') {
      if (zpart.size() == 1) {
        power = 1;
      } else if (zpart[1] == '^') {
        power = std::stoi(zpart.substr(2));
      } else {
        throw BadScalar(text);
      }
    } else if (star == std::string::npos) {
      coeff = Rational::parse(term);
    } else {
      throw BadScalar(text);
    }
    std::vector<Rational> poly(static_cast<size_t>(power) + 1);
    poly[static_cast<size_t>(power)] = sg == 1 ? coeff : -coeff;
    if (power > 0 && m == 1) throw BadScalar("z used without a declared order: " + text);
    total += Scalar(power > 0 ? m : 1, std::move(poly));
  }
  return total;
}

}  // namespace grla
