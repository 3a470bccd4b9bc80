#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>

#include "starlim/polynomial.hpp"

namespace starlim {

// Reduced rational function p(x)/q(x) over Q: gcd(p, q) = 1 and q monic
// (so the denominator's leading coefficient is positive and the
// representation of a given function is unique). Zero is 0/1.
class RatFunc {
public:
  RatFunc() : num_(), den_(Polynomial(Rat(1))) {}

  explicit RatFunc(Rat constant) : num_(Polynomial(std::move(constant))), den_(Polynomial(Rat(1))) {}

  RatFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    assert(!den_.is_zero());
    reduce();
  }

  static RatFunc variable() { return RatFunc(Polynomial::variable(), Polynomial(Rat(1))); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const { return num_.constant_value(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    assert(!b.is_zero());
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFunc reciprocal() const {
    assert(!is_zero());
    return RatFunc(den_, num_);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Exact value at integer/rational points; nullopt at poles.
  template <typename T>
  std::optional<Rat> eval(const T& x) const {
    Rat d = den_.eval(x);
    if (d == 0) return std::nullopt;
    return num_.eval(x) / d;
  }

  // f(g(x)) for a polynomial argument.
  RatFunc compose_poly(const Polynomial& g) const {
    return RatFunc(num_.compose(g), den_.compose(g));
  }

  // Sign of the function as x -> +infinity; 0 iff the zero function.
  int eventual_sign() const {
    if (num_.is_zero()) return 0;
    return sign(num_.leading());  // den is monic
  }

  bool limit_is_finite() const { return num_.degree() <= den_.degree(); }

  // Limit as x -> +infinity; nullopt when |f| -> infinity.
  std::optional<Rat> finite_limit() const {
    if (num_.degree() > den_.degree()) return std::nullopt;
    if (num_.degree() < den_.degree()) return Rat(0);
    return num_.leading() / den_.leading();
  }

private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial(Rat(1));
      return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    Rat lead = den_.leading();
    if (lead != 1) {
      Rat inv = Rat(1) / lead;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Polynomial num_, den_;
};

namespace detail {

// Renders an integer-coefficient polynomial in the expression grammar,
// e.g. "3*n^2 + n - 5"; a negative leading coefficient is kept attached to
// the literal ("-3*n^2 + ..."), which the grammar accepts.
inline std::string format_int_poly(const Polynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    Rat c = p.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    bool first = out.empty();
    Rat a = rat_abs(c);
    if (!first) out += (c < 0) ? " - " : " + ";
    std::string coeff_txt;
    if (first && c < 0) coeff_txt = "-" + to_string(a);
    else coeff_txt = to_string(a);
    if (i == 0) {
      out += coeff_txt;
    } else {
      std::string mono = (i == 1) ? var : var + "^" + std::to_string(i);
      if (a == 1) out += (first && c < 0) ? "-1*" + mono : mono;
      else out += coeff_txt + "*" + mono;
    }
  }
  return out;
}

inline bool poly_is_plain_monomial(const Polynomial& p) {
  if (p.degree() < 1) return false;
  for (int i = 0; i < p.degree(); ++i)
    if (p.coeff(static_cast<std::size_t>(i)) != 0) return false;
  return p.leading() == 1;
}

}  // namespace detail

// Grammar-compatible rendering with denominators cleared to a primitive
// integer form, e.g. "(3*n^2 + n)/(n^2 + 5)", "1/(2*n)", "n", "-3/2".
inline std::string format_ratfunc(const RatFunc& f, const std::string& var = "n") {
  if (f.is_zero()) return "0";
  Int scale = f.num().denominator_lcm();
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), f.den().denominator_lcm().get_mpz_t());
  Polynomial p = f.num() * Rat(scale);
  Polynomial q = f.den() * Rat(scale);
  // divide out the integer content shared by all coefficients
  Int content(0);
  for (const auto& c : p.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  for (const auto& c : q.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  if (content > 1) {
    Rat inv = make_rat(Int(1), content);
    p = p * inv;
    q = q * inv;
  }
  if (q.is_constant()) {
    Rat qc = q.constant_value();
    if (qc != 1) p = p * (Rat(1) / qc);
    return detail::format_int_poly(p, var);
  }
  std::string num_txt = detail::format_int_poly(p, var);
  bool num_simple = (p.degree() == 0) || detail::poly_is_plain_monomial(p);
  if (!num_simple || (p.degree() == 0 && p.constant_value() < 0)) num_txt = "(" + num_txt + ")";
  std::string den_txt = detail::format_int_poly(q, var);
  bool den_simple = detail::poly_is_plain_monomial(q);
  if (!den_simple) den_txt = "(" + den_txt + ")";
  return num_txt + "/" + den_txt;
}

}  // namespace starlim
