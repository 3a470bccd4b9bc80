#pragma once

#include <cstdint>
#include <vector>

#include "starlim/error.hpp"

namespace starlim {
namespace models {

// A family of subsets of {0..k-1}: bit i of `members` is set when the
// subset with element-mask i belongs to the family. k <= 4 keeps the whole
// family space (2^(2^k) candidates) enumerable.
struct FiniteFamily {
  unsigned k = 1;
  std::uint32_t members = 0;

  friend bool operator==(const FiniteFamily&, const FiniteFamily&) = default;
};

inline void require_universe(unsigned k) {
  if (k < 1 || k > 4) throw UniverseTooLarge("universe size must be between 1 and 4");
}

inline unsigned subset_count(unsigned k) { return 1u << k; }
inline std::uint32_t full_mask(unsigned k) { return (1u << k) - 1u; }

inline bool has(const FiniteFamily& f, std::uint32_t subset) {
  return (f.members >> subset) & 1u;
}

// Direct check of the three filter axioms: no empty set, closed under
// intersections, closed under supersets; the family must be nonempty.
inline bool is_filter(const FiniteFamily& f) {
  unsigned sc = subset_count(f.k);
  if (f.members == 0) return false;
  if (has(f, 0)) return false;
  for (std::uint32_t a = 0; a < sc; ++a) {
    if (!has(f, a)) continue;
    for (std::uint32_t b = 0; b < sc; ++b) {
      if (has(f, b) && !has(f, a & b)) return false;
    }
    for (std::uint32_t b = 0; b < sc; ++b) {
      if ((a & b) == a && !has(f, b)) return false;  // a subset of b
    }
  }
  return true;
}

inline bool is_ultrafilter(const FiniteFamily& f) {
  if (!is_filter(f)) return false;
  std::uint32_t full = full_mask(f.k);
  for (std::uint32_t a = 0; a <= full; ++a)
    if (!has(f, a) && !has(f, full & ~a)) return false;
  return true;
}

inline std::vector<FiniteFamily> enumerate_filters(unsigned k) {
  require_universe(k);
  std::vector<FiniteFamily> out;
  std::uint32_t family_space = 1u << subset_count(k);
  for (std::uint32_t members = 1; members < family_space; ++members) {
    FiniteFamily f{k, members};
    if (is_filter(f)) out.push_back(f);
  }
  return out;
}

inline std::vector<FiniteFamily> enumerate_ultrafilters(unsigned k) {
  require_universe(k);
  std::vector<FiniteFamily> out;
  for (const auto& f : enumerate_filters(k))
    if (is_ultrafilter(f)) out.push_back(f);
  return out;
}

// All ultrafilters containing the given filter; nonempty for every filter.
inline std::vector<FiniteFamily> extend_filter(const FiniteFamily& f) {
  require_universe(f.k);
  if (!is_filter(f)) throw NotAFilter("the family violates a filter axiom");
  std::vector<FiniteFamily> out;
  for (const auto& u : enumerate_ultrafilters(f.k))
    if ((f.members & u.members) == f.members) out.push_back(u);
  return out;
}

// The principal filter {X : base subset of X}.
inline FiniteFamily principal_filter(unsigned k, std::uint32_t base) {
  FiniteFamily f{k, 0};
  for (std::uint32_t a = 0; a < subset_count(k); ++a)
    if ((base & a) == base) f.members |= (1u << a);
  return f;
}

struct MeasureReport {
  bool two_valued = false;
  bool unit_total = false;
  bool vanishes_on_empty = false;
  bool additive = false;          // over every disjoint pair
  bool dichotomy = false;         // mu(A) = 1 xor mu(comp A) = 1
  bool intersection_stable = false;
  bool superset_stable = false;
  bool union_exactly_one = false;  // disjoint covers split 1 + 0

  bool all() const {
    return two_valued && unit_total && vanishes_on_empty && additive && dichotomy &&
           intersection_stable && superset_stable && union_exactly_one;
  }
};

// mu(A) = 1 iff A is in the ultrafilter; verifies the measure axioms and
// characteristic properties exhaustively over the finite universe.
inline MeasureReport check_measure(const FiniteFamily& f) {
  require_universe(f.k);
  if (!is_ultrafilter(f)) throw NotUltra("measures arise from ultrafilters only");
  auto mu = [&](std::uint32_t a) -> unsigned { return has(f, a) ? 1u : 0u; };
  std::uint32_t full = full_mask(f.k);
  MeasureReport rep;
  rep.two_valued = true;  // mu is {0,1} by construction
  rep.unit_total = mu(full) == 1;
  rep.vanishes_on_empty = mu(0) == 0;
  rep.additive = true;
  rep.dichotomy = true;
  rep.intersection_stable = true;
  rep.superset_stable = true;
  rep.union_exactly_one = true;
  for (std::uint32_t a = 0; a <= full; ++a) {
    std::uint32_t comp = full & ~a;
    if (mu(a) + mu(comp) != 1) rep.dichotomy = false;
    if (mu(a) + mu(comp) != 1) rep.union_exactly_one = false;
    for (std::uint32_t b = 0; b <= full; ++b) {
      if ((a & b) == 0 && mu(a | b) != mu(a) + mu(b)) rep.additive = false;
      if (mu(a) == 1 && mu(b) == 1 && mu(a & b) != 1) rep.intersection_stable = false;
      if ((a & b) == a && mu(a) == 1 && mu(b) != 1) rep.superset_stable = false;
    }
  }
  return rep;
}

}  // namespace models
}  // namespace starlim
