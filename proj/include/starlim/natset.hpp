#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starlim/rational.hpp"

namespace starlim {

// Eventually periodic subset of N = {0, 1, 2, ...} in canonical form:
//   - modulus m is the minimal period of the tail,
//   - threshold T is the minimal index from which membership follows the
//     periodic rule n mod m in R,
//   - prefix stores exact membership for every n < T.
// Canonical forms are unique: two NatSets describe the same set iff they
// compare equal field-wise.
class NatSet {
public:
  static constexpr Nat kMaxThreshold = Nat(1) << 28;
  static constexpr Nat kMaxModulus = Nat(1) << 20;

  NatSet() : threshold_(0), modulus_(1), residues_{false} {}

  // Raw description -> canonical form. `exceptions` override the periodic
  // rule below `threshold`; an entry whose flag matches the rule is a no-op.
  static NatSet from_parts(Nat threshold, Nat modulus, std::vector<bool> residues,
                           const std::vector<std::pair<Nat, bool>>& exceptions = {}) {
    if (modulus == 0 || modulus > kMaxModulus)
      throw ModulusOverflow("NatSet modulus must be in [1, 2^20]");
    if (residues.size() != modulus)
      throw Error("BadResidueSet", "residue vector size must equal the modulus");
    if (threshold > kMaxThreshold)
      throw ThresholdOverflow("NatSet threshold exceeds the supported cap");
    NatSet s;
    s.threshold_ = threshold;
    s.modulus_ = modulus;
    s.residues_ = std::move(residues);
    s.prefix_.resize(threshold);
    for (Nat n = 0; n < threshold; ++n) s.prefix_[n] = s.residues_[n % modulus];
    for (const auto& [idx, flag] : exceptions) {
      if (idx >= threshold)
        throw Error("BadExceptionIndex", "exception index must lie below the threshold");
      s.prefix_[idx] = flag;
    }
    s.canonicalize();
    return s;
  }

  static NatSet empty_set() { return NatSet(); }

  static NatSet all() {
    NatSet s;
    s.residues_ = {true};
    return s;
  }

  // {nu, nu+1, nu+2, ...}
  static NatSet tail(Nat nu) {
    NatSet s;
    s.residues_ = {true};
    s.threshold_ = nu;
    s.prefix_.assign(nu, false);
    return s;  // already canonical
  }

  // {n : n mod modulus == residue}
  static NatSet residue_class(Nat modulus, Nat residue) {
    std::vector<bool> r(modulus, false);
    r[residue % modulus] = true;
    return from_parts(0, modulus, std::move(r));
  }

  static NatSet evens() { return residue_class(2, 0); }
  static NatSet odds() { return residue_class(2, 1); }

  static NatSet finite_set(std::vector<Nat> elements) {
    if (elements.empty()) return empty_set();
    Nat t = *std::max_element(elements.begin(), elements.end()) + 1;
    if (t > kMaxThreshold) throw ThresholdOverflow("finite set element exceeds the supported cap");
    NatSet s;
    s.threshold_ = t;
    s.prefix_.assign(t, false);
    for (Nat e : elements) s.prefix_[e] = true;
    s.canonicalize();
    return s;
  }

  Nat threshold() const { return threshold_; }
  Nat modulus() const { return modulus_; }
  const std::vector<bool>& residues() const { return residues_; }

  bool member(Nat n) const {
    if (n < threshold_) return prefix_[n];
    return residues_[n % modulus_];
  }

  // The canonical (index, flag) overrides: positions below the threshold
  // where membership differs from the periodic rule.
  std::vector<std::pair<Nat, bool>> exceptions() const {
    std::vector<std::pair<Nat, bool>> out;
    for (Nat n = 0; n < threshold_; ++n)
      if (prefix_[n] != residues_[n % modulus_]) out.emplace_back(n, prefix_[n]);
    return out;
  }

  friend bool operator==(const NatSet& a, const NatSet& b) {
    return a.threshold_ == b.threshold_ && a.modulus_ == b.modulus_ &&
           a.residues_ == b.residues_ && a.prefix_ == b.prefix_;
  }

  NatSet complement() const {
    NatSet s;
    s.threshold_ = threshold_;
    s.modulus_ = modulus_;
    s.residues_ = residues_;
    s.residues_.flip();
    s.prefix_ = prefix_;
    s.prefix_.flip();
    s.canonicalize();
    return s;
  }

  NatSet intersect(const NatSet& o) const {
    return combine(o, [](bool a, bool b) { return a && b; });
  }

  NatSet unite(const NatSet& o) const {
    return combine(o, [](bool a, bool b) { return a || b; });
  }

  NatSet difference(const NatSet& o) const {
    return combine(o, [](bool a, bool b) { return a && !b; });
  }

  bool subset_of(const NatSet& o) const { return difference(o).is_empty(); }

  // Cofinite <=> the periodic tail covers every residue class.
  bool is_cofinite() const {
    return std::all_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
  }

  // Minimal nu with {nu, nu+1, ...} included; absent unless cofinite.
  std::optional<Nat> frechet_witness() const {
    if (!is_cofinite()) return std::nullopt;
    Nat nu = threshold_;
    while (nu > 0 && prefix_[nu - 1]) --nu;
    return nu;
  }

  bool is_finite() const {
    return std::none_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
  }

  bool is_empty() const {
    return is_finite() && std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; });
  }

  // Number of elements; only meaningful for finite sets.
  Nat finite_size() const {
    Nat c = 0;
    for (Nat n = 0; n < threshold_; ++n)
      if (prefix_[n]) ++c;
    return c;
  }

  // Text form: {T=5; mod=2; res=0; exc=+1,-3}. The exc segment is omitted
  // when there are no overrides, res= is left empty for a finite set.
  std::string to_text() const {
    std::string out = "{T=" + std::to_string(threshold_) + "; mod=" + std::to_string(modulus_) + "; res=";
    bool first = true;
    for (Nat r = 0; r < modulus_; ++r) {
      if (!residues_[r]) continue;
      if (!first) out += ",";
      out += std::to_string(r);
      first = false;
    }
    auto exc = exceptions();
    if (!exc.empty()) {
      out += "; exc=";
      for (std::size_t i = 0; i < exc.size(); ++i) {
        if (i) out += ",";
        out += exc[i].second ? "+" : "-";
        out += std::to_string(exc[i].first);
      }
    }
    out += "}";
    return out;
  }

  static NatSet parse_text(std::string_view text);

private:
  template <typename F>
  NatSet combine(const NatSet& o, F op) const {
    Nat m = lcm_nat_checked(modulus_, o.modulus_, kMaxModulus);
    Nat t = std::max(threshold_, o.threshold_);
    NatSet s;
    s.modulus_ = m;
    s.threshold_ = t;
    s.residues_.resize(m);
    for (Nat r = 0; r < m; ++r) s.residues_[r] = op(residues_[r % modulus_], o.residues_[r % o.modulus_]);
    s.prefix_.resize(t);
    for (Nat n = 0; n < t; ++n) s.prefix_[n] = op(member(n), o.member(n));
    s.canonicalize();
    return s;
  }

  void canonicalize() {
    // minimal tail period: smallest divisor d of m with d-periodic residues
    for (Nat d = 1; d <= modulus_ / 2; ++d) {
      if (modulus_ % d != 0) continue;
      bool periodic = true;
      for (Nat r = 0; r < modulus_ && periodic; ++r)
        if (residues_[r] != residues_[r % d]) periodic = false;
      if (periodic) {
        residues_.resize(d);
        modulus_ = d;
        break;
      }
    }
    // minimal threshold: drop prefix entries that already match the rule
    while (threshold_ > 0 && prefix_[threshold_ - 1] == residues_[(threshold_ - 1) % modulus_]) {
      prefix_.pop_back();
      --threshold_;
    }
  }

  Nat threshold_;
  Nat modulus_;
  std::vector<bool> residues_;
  std::vector<bool> prefix_;  // membership below threshold_
};

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline std::optional<Nat> read_nat(std::string_view s, std::size_t& i) {
  skip_ws(s, i);
  std::size_t b = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == b) return std::nullopt;
  Nat v = 0;
  for (std::size_t k = b; k < i; ++k) {
    if (v > (std::numeric_limits<Nat>::max() - 9) / 10) return std::nullopt;
    v = v * 10 + static_cast<Nat>(s[k] - '0');
  }
  return v;
}

inline bool expect(std::string_view s, std::size_t& i, std::string_view word) {
  skip_ws(s, i);
  if (s.substr(i, word.size()) != word) return false;
  i += word.size();
  return true;
}

}  // namespace detail

inline NatSet NatSet::parse_text(std::string_view text) {
  auto fail = [&](const std::string& msg, std::size_t at) -> SyntaxError {
    return SyntaxError("set literal: " + msg, SourceSpan{at, std::min(at + 1, text.size())});
  };
  std::size_t i = 0;
  if (!detail::expect(text, i, "{")) throw fail("expected '{'", i);
  if (!detail::expect(text, i, "T=")) throw fail("expected 'T='", i);
  auto t = detail::read_nat(text, i);
  if (!t) throw fail("expected threshold", i);
  if (!detail::expect(text, i, ";") || !detail::expect(text, i, "mod=")) throw fail("expected '; mod='", i);
  auto m = detail::read_nat(text, i);
  if (!m || *m == 0) throw fail("expected positive modulus", i);
  if (!detail::expect(text, i, ";") || !detail::expect(text, i, "res=")) throw fail("expected '; res='", i);
  std::vector<bool> residues(*m, false);
  detail::skip_ws(text, i);
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    auto r = detail::read_nat(text, i);
    if (!r || *r >= *m) throw fail("residue out of range", i);
    residues[*r] = true;
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == ',') {
      ++i;
      detail::skip_ws(text, i);
    } else {
      break;
    }
  }
  std::vector<std::pair<Nat, bool>> exceptions;
  detail::skip_ws(text, i);
  if (i < text.size() && text[i] == ';') {
    ++i;
    if (!detail::expect(text, i, "exc=")) throw fail("expected 'exc='", i);
    while (true) {
      detail::skip_ws(text, i);
      if (i >= text.size() || (text[i] != '+' && text[i] != '-')) throw fail("expected '+' or '-'", i);
      bool flag = text[i] == '+';
      ++i;
      auto idx = detail::read_nat(text, i);
      if (!idx) throw fail("expected exception index", i);
      if (*idx >= *t) throw fail("exception index must lie below T", i);
      exceptions.emplace_back(*idx, flag);
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
  }
  if (!detail::expect(text, i, "}")) throw fail("expected '}'", i);
  detail::skip_ws(text, i);
  if (i != text.size()) throw fail("trailing input", i);
  return NatSet::from_parts(*t, *m, std::move(residues), exceptions);
}

}  // namespace starlim
