#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "starlim/error.hpp"

namespace starlim {

// Exact arithmetic lives on GMP throughout; no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;
using Nat = std::uint64_t;

inline int sign(const Int& z) { return sgn(z); }
inline int sign(const Rat& q) { return sgn(q); }

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Smallest integer s >= 0 with s^k >= z (z >= 0).
inline Int ceil_kth_root(const Int& z, unsigned long k) {
  if (z <= 0) return 0;
  Int s;
  mpz_root(s.get_mpz_t(), z.get_mpz_t(), k);  // floor root
  Int p;
  mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), k);
  if (p < z) ++s;
  return s;
}

inline bool fits_nat(const Int& z) {
  return z >= 0 && mpz_fits_ulong_p(z.get_mpz_t()) != 0;
}

inline Nat to_nat_checked(const Int& z, const char* what) {
  if (!fits_nat(z)) {
    throw ThresholdOverflow(std::string(what) + " does not fit a machine index");
  }
  return static_cast<Nat>(mpz_get_ui(z.get_mpz_t()));
}

// "p/q" in lowest terms, "/q" omitted when q = 1.
inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

// Strict "p/q" literal: optional sign, digits, optional "/digits" with a
// positive denominator. Anything else (including floats) is rejected.
inline std::optional<Rat> parse_rat(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  if (text[i] == '-' || text[i] == '+') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == num_begin) return std::nullopt;
  std::string num(text.substr(0, i));
  std::string den = "1";
  if (i < text.size()) {
    if (text[i] != '/') return std::nullopt;
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == den_begin || i != text.size()) return std::nullopt;
    den.assign(text.substr(den_begin));
  }
  Int n(num), d(den);
  if (d == 0) return std::nullopt;
  return make_rat(n, d);
}

inline Nat gcd_nat(Nat a, Nat b) {
  while (b != 0) {
    Nat t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Nat lcm_nat_checked(Nat a, Nat b, Nat cap) {
  Nat g = gcd_nat(a, b);
  Nat l = (a / g);
  if (b != 0 && l > cap / b) throw ModulusOverflow("lcm of moduli exceeds the supported cap");
  l *= b;
  if (l > cap) throw ModulusOverflow("lcm of moduli exceeds the supported cap");
  return l;
}

}  // namespace starlim
