#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starlim/natset.hpp"

namespace starlim {

// Finite basis generating a filter: membership of A in the generated filter
// reduces to "the intersection of all basis sets is contained in A", the
// smallest finite intersection available.
class FilterBasis {
public:
  explicit FilterBasis(std::vector<NatSet> sets) : sets_(std::move(sets)) {
    if (sets_.empty()) throw EmptyBasisIntersection("filter basis must list at least one set");
    intersection_ = sets_.front();
    for (std::size_t i = 1; i < sets_.size(); ++i) intersection_ = intersection_.intersect(sets_[i]);
    if (intersection_.is_empty())
      throw EmptyBasisIntersection("the intersection of the basis sets is empty");
  }

  const std::vector<NatSet>& sets() const { return sets_; }
  const NatSet& intersection() const { return intersection_; }

  bool generated_member(const NatSet& a) const { return intersection_.subset_of(a); }

private:
  std::vector<NatSet> sets_;
  NatSet intersection_;
};

// A coherent residue tower: the verdict a free ultrafilter gives on every
// eventually periodic set, realized as the tower of a single integer point
// (the smallest nonnegative solution of the CRT constraints). residue(m) is
// recomputed purely on demand, so instances are freely shareable.
class UltraFragment {
public:
  UltraFragment() : point_(0), crt_modulus_(1) {}

  explicit UltraFragment(std::vector<std::pair<Nat, Nat>> constraints)
      : constraints_(std::move(constraints)), point_(0), crt_modulus_(1) {
    for (const auto& [m, r] : constraints_) {
      if (m == 0 || r >= m)
        throw IncoherentConstraints("constraint residue must satisfy 0 <= r < m with m >= 1");
      merge(Int(static_cast<unsigned long>(m)), Int(static_cast<unsigned long>(r)));
    }
  }

  const std::vector<std::pair<Nat, Nat>>& constraints() const { return constraints_; }
  const Int& point() const { return point_; }

  Nat residue(Nat modulus) const {
    Int m(static_cast<unsigned long>(modulus));
    Int r = point_ % m;
    return static_cast<Nat>(mpz_get_ui(r.get_mpz_t()));
  }

  // Fragment verdict on a canonical NatSet: the tail rule at the selected
  // residue class. Cofinite sets are always in, finite sets never.
  bool decide(const NatSet& a) const { return a.residues()[residue(a.modulus())]; }

  unsigned measure(const NatSet& a) const { return decide(a) ? 1u : 0u; }

  // "2:1,3:2"; the empty string is the default zero tower.
  static UltraFragment parse(std::string_view text) {
    std::vector<std::pair<Nat, Nat>> cs;
    std::size_t i = 0;
    detail::skip_ws(text, i);
    while (i < text.size()) {
      auto m = detail::read_nat(text, i);
      if (!m) throw SyntaxError("fragment: expected modulus", SourceSpan{i, i + 1});
      if (!detail::expect(text, i, ":"))
        throw SyntaxError("fragment: expected ':'", SourceSpan{i, i + 1});
      auto r = detail::read_nat(text, i);
      if (!r) throw SyntaxError("fragment: expected residue", SourceSpan{i, i + 1});
      cs.emplace_back(*m, *r);
      detail::skip_ws(text, i);
      if (i < text.size()) {
        if (text[i] != ',') throw SyntaxError("fragment: expected ','", SourceSpan{i, i + 1});
        ++i;
      }
    }
    return UltraFragment(std::move(cs));
  }

  std::string to_text() const {
    std::string out;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(constraints_[i].first) + ":" + std::to_string(constraints_[i].second);
    }
    return out;
  }

private:
  // CRT merge of x = point_ (mod crt_modulus_) with x = r (mod m).
  void merge(const Int& m, const Int& r) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), crt_modulus_.get_mpz_t(), m.get_mpz_t());
    Int diff = r - point_;
    if (diff % g != 0) throw IncoherentConstraints("constraints have no common solution");
    Int lcm = crt_modulus_ / g * m;
    Int add = (diff / g) * s % (m / g) * crt_modulus_;
    point_ = (point_ + add) % lcm;
    if (point_ < 0) point_ += lcm;
    crt_modulus_ = lcm;
  }

  std::vector<std::pair<Nat, Nat>> constraints_;
  Int point_;
  Int crt_modulus_;
};

// The two-valued finitely additive measure a fragment induces.
class Measure01 {
public:
  explicit Measure01(UltraFragment fragment) : fragment_(std::move(fragment)) {}

  unsigned operator()(const NatSet& a) const { return fragment_.measure(a); }

  const UltraFragment& fragment() const { return fragment_; }

private:
  UltraFragment fragment_;
};

}  // namespace starlim
