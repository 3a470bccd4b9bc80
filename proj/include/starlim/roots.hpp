#pragma once

#include <vector>

#include "starlim/polynomial.hpp"

namespace starlim {

// floor(1 + max_i |c_i| / |c_d|): every real root of p has absolute value
// strictly below this (Cauchy). Returns 0 for degree <= 0.
inline Int cauchy_root_bound_floor(const Polynomial& p) {
  if (p.degree() <= 0) return Int(0);
  Rat lead = rat_abs(p.leading());
  Rat biggest(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rat a = rat_abs(p.coeff(static_cast<std::size_t>(i)));
    if (a > biggest) biggest = a;
  }
  return rat_floor(Rat(1) + biggest / lead);
}

// Fujiwara-style bound: all real roots of p are <= the returned integer.
// Much tighter than Cauchy when the leading coefficient is tiny relative to
// the rest (the typical shape of the epsilon-band polynomials).
inline Int fujiwara_root_bound(const Polynomial& p) {
  if (p.degree() <= 0) return Int(0);
  Rat lead = rat_abs(p.leading());
  Int best(0);
  for (int k = 1; k <= p.degree(); ++k) {
    Rat a = rat_abs(p.coeff(static_cast<std::size_t>(p.degree() - k)));
    if (a == 0) continue;
    Int t = rat_ceil(a / lead);
    Int s = ceil_kth_root(t, static_cast<unsigned long>(k));
    if (s > best) best = s;
  }
  return 2 * best;
}

// Canonical Sturm chain of a squarefree polynomial.
inline std::vector<Polynomial> sturm_chain(const Polynomial& squarefree) {
  std::vector<Polynomial> chain;
  chain.push_back(squarefree);
  Polynomial d = squarefree.derivative();
  if (!d.is_zero()) chain.push_back(d);
  while (chain.size() >= 2 && chain.back().degree() > 0) {
    Polynomial r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

inline int sturm_variations(const std::vector<Polynomial>& chain, const Int& x) {
  int variations = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  return variations;
}

// An inclusive integer range [lo, hi] on which sign(p(n)) is constant.
struct SignRange {
  Int lo;
  Int hi;
  int sign;
};

namespace detail {

struct SignScanner {
  const Polynomial& p;
  std::vector<Polynomial> chain;
  std::vector<SignRange> out;

  explicit SignScanner(const Polynomial& poly) : p(poly), chain(sturm_chain(squarefree_part(poly))) {}

  void emit(const Int& lo, const Int& hi, int s) {
    if (!out.empty() && out.back().sign == s && out.back().hi + 1 == lo) {
      out.back().hi = hi;
    } else {
      out.push_back(SignRange{lo, hi, s});
    }
  }

  // Emits exact signs for every integer in [a, b].
  void scan(const Int& a, const Int& b, int sa, int sb, int va, int vb) {
    if (a == b) {
      emit(a, a, sa);
      return;
    }
    if (sa != 0 && sa == sb && va == vb) {
      // no roots of the squarefree part in (a, b], so no sign change on [a, b]
      emit(a, b, sa);
      return;
    }
    if (b == a + 1) {
      emit(a, a, sa);
      emit(b, b, sb);
      return;
    }
    Int m = (a + b) / 2;
    int sm = p.sign_at(m);
    int vm = sturm_variations(chain, m);
    scan(a, m, sa, sm, va, vm);
    Int m1 = m + 1;
    int sm1 = p.sign_at(m1);
    int vm1 = sturm_variations(chain, m1);
    scan(m1, b, sm1, sb, vm1, vb);
  }
};

}  // namespace detail

// Exact signs of p on the integers [0, hi], as maximal constant-sign runs.
// p may have repeated roots. For the zero polynomial, one all-zero run.
inline std::vector<SignRange> sign_ranges(const Polynomial& p, const Int& hi) {
  if (p.is_zero()) return {SignRange{Int(0), hi, 0}};
  if (p.degree() == 0) return {SignRange{Int(0), hi, sign(p.constant_value())}};
  detail::SignScanner scanner(p);
  Int a(0);
  int sa = p.sign_at(a);
  int sb = p.sign_at(hi);
  int va = sturm_variations(scanner.chain, a);
  int vb = sturm_variations(scanner.chain, hi);
  scanner.scan(a, hi, sa, sb, va, vb);
  return scanner.out;
}

struct SignProfile {
  std::vector<SignRange> ranges;  // covers [0, stable_from] at least
  int eventual_sign = 0;
  Int stable_from;  // sign(p(n)) == eventual_sign for every n >= stable_from
};

// Full integer sign picture of p: exact signs below, eventual sign beyond.
inline SignProfile sign_profile(const Polynomial& p) {
  SignProfile prof;
  if (p.is_zero()) {
    prof.eventual_sign = 0;
    prof.stable_from = 0;
    prof.ranges = {SignRange{Int(0), Int(0), 0}};
    return prof;
  }
  prof.eventual_sign = sign(p.leading());
  Int hi = fujiwara_root_bound(p) + 1;
  if (hi < 1) hi = 1;
  prof.ranges = sign_ranges(p, hi);
  Int from = hi;
  for (std::size_t i = prof.ranges.size(); i-- > 0;) {
    if (prof.ranges[i].sign != prof.eventual_sign) break;
    from = prof.ranges[i].lo;
  }
  prof.stable_from = from;
  return prof;
}

}  // namespace starlim
