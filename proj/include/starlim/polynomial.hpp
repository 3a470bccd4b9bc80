#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "starlim/rational.hpp"

namespace starlim {

// Univariate polynomial with exact rational coefficients, c_[i] * x^i.
// Trailing zero coefficients are stripped; the zero polynomial has no
// coefficients and degree() == -1.
class Polynomial {
public:
  Polynomial() = default;

  explicit Polynomial(Rat constant) {
    if (constant != 0) c_.push_back(std::move(constant));
  }

  explicit Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial variable() { return Polynomial(std::vector<Rat>{Rat(0), Rat(1)}); }

  static Polynomial monomial(Rat coeff, std::size_t power) {
    if (coeff == 0) return Polynomial();
    std::vector<Rat> c(power + 1, Rat(0));
    c[power] = std::move(coeff);
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

  const Rat& leading() const {
    assert(!c_.empty());
    return c_.back();
  }

  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_constant() const { return c_.size() <= 1; }
  Rat constant_value() const { return c_.empty() ? Rat(0) : c_[0]; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Rat> c(a.c_);
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Rat& s) {
    if (s == 0) return Polynomial();
    std::vector<Rat> c(a.c_);
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  template <typename T>
  Rat eval(const T& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  int sign_at(const Rat& x) const { return sign(eval(x)); }
  int sign_at(const Int& x) const { return sign(eval(x)); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rat> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Polynomial(std::move(c));
  }

  // this(g(x)) via Horner.
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + Polynomial(c_[i]);
    return acc;
  }

  // Field division: *this = q * d + r with deg r < deg d. Requires d != 0.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    assert(!d.is_zero());
    Polynomial r = *this;
    if (r.degree() < d.degree()) return {Polynomial(), r};
    std::vector<Rat> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t k = static_cast<std::size_t>(r.degree() - d.degree());
      Rat f = r.leading() / d.leading();
      q[k] = f;
      r = r - Polynomial::monomial(f, k) * d;
    }
    return {Polynomial(std::move(q)), r};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading());
  }

  // lcm of coefficient denominators; 1 for the zero polynomial.
  Int denominator_lcm() const {
    Int l(1);
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
};

// Monic gcd over Q[x].
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  Polynomial g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return p.divmod(g).first;
}

}  // namespace starlim
