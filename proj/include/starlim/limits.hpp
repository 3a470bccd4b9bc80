#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starlim/natset.hpp"
#include "starlim/roots.hpp"
#include "starlim/starset.hpp"

namespace starlim {

namespace detail {

// One per-residue-class sign condition: membership of n (in the class) is
// pred(sign(g(n))), where pred accepts positive signs and, optionally, zero.
// `excluded` lists finitely many indices that must be dropped regardless
// (pole positions of the underlying sequence).
struct ClassCondition {
  Polynomial g;
  bool accept_zero = false;
  std::vector<Nat> excluded;
};

// Exact eventually periodic set from per-class sign conditions.
inline NatSet natset_from_conditions(Nat modulus, const std::vector<ClassCondition>& conds) {
  auto pred = [](const ClassCondition& c, int s) { return c.accept_zero ? s >= 0 : s > 0; };

  std::vector<SignProfile> profiles;
  profiles.reserve(modulus);
  Nat raw_threshold = 0;
  for (Nat r = 0; r < modulus; ++r) {
    profiles.push_back(sign_profile(conds[r].g));
    Int stable = profiles.back().stable_from;
    // first index of this class at or past the stable point
    Int first = stable + ((Int(static_cast<unsigned long>(r)) - stable) % Int(static_cast<unsigned long>(modulus)) +
                          Int(static_cast<unsigned long>(modulus))) %
                             Int(static_cast<unsigned long>(modulus));
    raw_threshold = std::max(raw_threshold, to_nat_checked(first, "set threshold"));
    for (Nat e : conds[r].excluded) raw_threshold = std::max(raw_threshold, e + 1);
  }
  if (raw_threshold > NatSet::kMaxThreshold)
    throw ThresholdOverflow("set threshold exceeds the supported cap");

  std::vector<bool> residues(modulus);
  for (Nat r = 0; r < modulus; ++r) residues[r] = pred(conds[r], profiles[r].eventual_sign);

  std::vector<std::pair<Nat, bool>> exceptions;
  for (Nat r = 0; r < modulus; ++r) {
    const auto& prof = profiles[r];
    std::size_t cursor = 0;
    for (Nat n = r; n < raw_threshold; n += modulus) {
      Int nz(static_cast<unsigned long>(n));
      int s;
      if (nz >= prof.stable_from) {
        s = prof.eventual_sign;
      } else {
        while (cursor < prof.ranges.size() && prof.ranges[cursor].hi < nz) ++cursor;
        s = prof.ranges[cursor].sign;
      }
      bool in = pred(conds[r], s);
      if (in != residues[r]) exceptions.emplace_back(n, in);
    }
    for (Nat e : conds[r].excluded)
      if (e % modulus == r && e < raw_threshold) exceptions.emplace_back(e, false);
  }
  return NatSet::from_parts(raw_threshold, modulus, std::move(residues), exceptions);
}

}  // namespace detail

// S_eps = {n : |a(n) - L| < eps}, exactly, as a canonical NatSet. Per class
// the band condition |p/q| < eps is the single polynomial sign condition
// eps^2 q^2 - p^2 > 0 (poles fail it automatically since gcd(p, q) = 1).
inline NatSet s_epsilon(const Germ& a, const Rat& L, const Rat& eps) {
  if (eps <= 0) throw Error("BadEpsilon", "epsilon must be positive");
  std::vector<detail::ClassCondition> conds(a.modulus());
  Rat eps2 = eps * eps;
  for (Nat r = 0; r < a.modulus(); ++r) {
    RatFunc f = a.piece_for_class(r) - RatFunc(L);
    conds[r].g = f.den() * f.den() * eps2 - f.num() * f.num();
    conds[r].accept_zero = false;
  }
  return detail::natset_from_conditions(a.modulus(), conds);
}

// {n : d(n) defined and d(n) >= 0}: sign condition on num*den, minus the
// denominator's integer zeros.
inline NatSet nonneg_set(const Germ& d) {
  std::vector<detail::ClassCondition> conds(d.modulus());
  for (Nat r = 0; r < d.modulus(); ++r) {
    const RatFunc& f = d.piece_for_class(r);
    conds[r].g = f.num() * f.den();
    conds[r].accept_zero = true;
    if (f.den().degree() > 0) {
      for (const auto& range : sign_profile(f.den()).ranges) {
        if (range.sign != 0) continue;
        for (Int z = range.lo; z <= range.hi; ++z) {
          Nat n = to_nat_checked(z, "pole position");
          if (n % d.modulus() == r) conds[r].excluded.push_back(n);
        }
      }
    }
  }
  return detail::natset_from_conditions(d.modulus(), conds);
}

inline bool frechet_limit_check(const Germ& a, const Rat& L, const Rat& eps) {
  return s_epsilon(a, L, eps).is_cofinite();
}

struct BadEpsilon {
  Rat epsilon;
  NatSet s_set;  // the non-cofinite S_epsilon
};

struct OmegaWitness {
  HyperNat omega;
  Nat residue_class;
  std::optional<Rat> class_limit;  // absent: the class is infinitely large
};

struct BadOmega {
  OmegaWitness primary;
  std::optional<OmegaWitness> conflicting;  // second class with a different limit
};

class NoWitness : public Error {
public:
  NoWitness(const std::string& msg, BadEpsilon ce)
      : Error("NoWitness", msg), counterexample_(std::move(ce)) {}

  const BadEpsilon& counterexample() const { return counterexample_; }

private:
  BadEpsilon counterexample_;
};

// Minimal nu with |a(n) - L| < eps for every n >= nu. The set construction
// provides a sound threshold; the canonical form's backward scan makes the
// witness minimal.
inline Nat witness_nu(const Germ& a, const Rat& L, const Rat& eps) {
  NatSet s = s_epsilon(a, L, eps);
  auto nu = s.frechet_witness();
  if (!nu) throw NoWitness("S_epsilon is not cofinite", BadEpsilon{eps, std::move(s)});
  return *nu;
}

struct LimitVerdict {
  std::optional<Rat> limit;
  std::optional<BadOmega> bad_omega;
  std::optional<BadEpsilon> bad_epsilon;
  std::vector<std::string> engines;

  bool converges() const { return limit.has_value(); }
};

inline const std::vector<Rat>& epsilon_grid() {
  static const std::vector<Rat> grid = {Rat(1), make_rat(1, 2), make_rat(1, 10),
                                        make_rat(1, 100), make_rat(1, 1000000)};
  return grid;
}

// The infinite hypernatural <modulus*n + r> that walks one residue class.
inline HyperNat class_omega(Nat modulus, Nat r) {
  Germ g = Germ::constant(Rat(static_cast<unsigned long>(modulus))) * Germ::index() +
           Germ::constant(Rat(static_cast<unsigned long>(r)));
  return HyperNat::certify(g, UltraFragment());
}

// Robinson engine: converges to L iff every residue class has finite limit L;
// then a(omega) is near L for every infinite hypernatural omega. A failing
// class yields the concrete omega = <m*n + r> along it.
inline LimitVerdict robinson_limit(const Germ& a) {
  LimitVerdict v;
  v.engines = {"robinson"};
  Nat m = a.modulus();
  std::vector<std::optional<Rat>> class_limits(m);
  for (Nat r = 0; r < m; ++r) class_limits[r] = a.piece_for_class(r).finite_limit();

  for (Nat r = 0; r < m; ++r) {
    if (!class_limits[r]) {
      v.bad_omega = BadOmega{OmegaWitness{class_omega(m, r), r, std::nullopt}, std::nullopt};
      return v;
    }
  }
  for (Nat r = 1; r < m; ++r) {
    if (*class_limits[r] != *class_limits[0]) {
      v.bad_omega = BadOmega{OmegaWitness{class_omega(m, 0), 0, class_limits[0]},
                             OmegaWitness{class_omega(m, r), r, class_limits[r]}};
      return v;
    }
  }
  v.limit = class_limits[0];
  return v;
}

// Negation corollary: a concrete eps whose S_eps is not cofinite, using half
// the least gap between L and a differing class limit (eps = 1 when the only
// failures are infinite classes).
inline BadEpsilon counterexample_epsilon(const Germ& a, const Rat& L) {
  LimitVerdict v = robinson_limit(a);
  if (v.converges() && *v.limit == L)
    throw IsActuallyLimit("the sequence does converge to the proposed limit");
  std::optional<Rat> least_gap;
  for (Nat r = 0; r < a.modulus(); ++r) {
    auto cl = a.piece_for_class(r).finite_limit();
    if (!cl || *cl == L) continue;
    Rat gap = rat_abs(*cl - L);
    if (!least_gap || gap < *least_gap) least_gap = gap;
  }
  Rat eps = least_gap ? *least_gap / 2 : Rat(1);
  NatSet s = s_epsilon(a, L, eps);
  if (s.is_cofinite())
    throw InternalInvariant("counterexample construction produced a cofinite S_epsilon");
  return BadEpsilon{eps, std::move(s)};
}

// Robinson verdict cross-checked against the Frechet and witness engines on
// the canonical epsilon grid; tags every agreeing engine and attaches the
// epsilon counterexample on divergence.
inline LimitVerdict limit_verdict(const Germ& a) {
  LimitVerdict v = robinson_limit(a);
  if (v.converges()) {
    for (const Rat& eps : epsilon_grid()) {
      if (!frechet_limit_check(a, *v.limit, eps))
        throw InternalInvariant("limit engines disagree (frechet)");
      witness_nu(a, *v.limit, eps);
    }
    v.engines = {"robinson", "frechet", "witness"};
    return v;
  }
  // reference limit for the epsilon counterexample: the first finite class
  // limit, or 0 when every class is infinite
  Rat ref(0);
  for (Nat r = 0; r < a.modulus(); ++r) {
    if (auto cl = a.piece_for_class(r).finite_limit()) {
      ref = *cl;
      break;
    }
  }
  v.bad_epsilon = counterexample_epsilon(a, ref);
  bool witness_agrees = false;
  try {
    witness_nu(a, ref, v.bad_epsilon->epsilon);
  } catch (const NoWitness&) {
    witness_agrees = true;
  }
  if (!witness_agrees) throw InternalInvariant("limit engines disagree (witness)");
  v.engines = {"robinson", "frechet", "witness"};
  return v;
}

// Structured record of the set-algebra steps behind a squeeze proof;
// replaying the recorded operations must reproduce every output exactly.
struct ProofTrace {
  struct Step {
    enum class Op { Define, Intersect, SubsetCheck, CofiniteCheck };

    Op op;
    std::string name;                 // set defined, or set checked
    std::vector<std::string> inputs;  // operands for Intersect/SubsetCheck
    std::optional<NatSet> set;        // Define/Intersect result
    std::optional<bool> verdict;      // check results
    std::optional<Nat> witness;       // cofinite witness, when true

    friend bool operator==(const Step&, const Step&) = default;
  };

  std::vector<Step> steps;
  bool conclusion = false;

  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;

  // Recompute every operation from the recorded inputs; true iff all
  // recorded outputs are reproduced bit-for-bit.
  bool replay() const {
    std::map<std::string, NatSet> env;
    for (const auto& st : steps) {
      switch (st.op) {
        case Step::Op::Define:
          if (!st.set) return false;
          env[st.name] = *st.set;
          break;
        case Step::Op::Intersect: {
          if (!st.set || st.inputs.size() != 2) return false;
          auto x = env.find(st.inputs[0]);
          auto y = env.find(st.inputs[1]);
          if (x == env.end() || y == env.end()) return false;
          NatSet r = x->second.intersect(y->second);
          if (!(r == *st.set)) return false;
          env[st.name] = r;
          break;
        }
        case Step::Op::SubsetCheck: {
          if (!st.verdict || st.inputs.size() != 2) return false;
          auto x = env.find(st.inputs[0]);
          auto y = env.find(st.inputs[1]);
          if (x == env.end() || y == env.end()) return false;
          if (x->second.subset_of(y->second) != *st.verdict) return false;
          break;
        }
        case Step::Op::CofiniteCheck: {
          if (!st.verdict) return false;
          auto x = env.find(st.name);
          if (x == env.end()) return false;
          if (x->second.is_cofinite() != *st.verdict) return false;
          if (*st.verdict && st.witness != x->second.frechet_witness()) return false;
          break;
        }
      }
    }
    return true;
  }
};

// Squeeze: from a <= x <= b eventually and both bounds tending to L, the
// middle sequence's S_eps is cofinite. The trace builds X, A_eps, B_eps,
// checks each cofinite, intersects, and lands inside S_eps(x, L, eps).
inline ProofTrace squeeze_check(const Germ& a, const Germ& b, const Germ& x, const Rat& L,
                                const Rat& eps) {
  ProofTrace trace;
  auto define = [&trace](const std::string& name, NatSet s) {
    trace.steps.push_back({ProofTrace::Step::Op::Define, name, {}, std::move(s), std::nullopt, std::nullopt});
  };
  auto check_cofinite = [&trace](const std::string& name, const NatSet& s) {
    bool ok = s.is_cofinite();
    std::optional<Nat> w = s.frechet_witness();
    trace.steps.push_back({ProofTrace::Step::Op::CofiniteCheck, name, {}, std::nullopt, ok, w});
    if (!ok) throw HypothesisFailed("hypothesis set '" + name + "' is not cofinite", name);
  };

  NatSet X = nonneg_set(x - a).intersect(nonneg_set(b - x));
  define("X", X);
  check_cofinite("X", X);

  NatSet A = s_epsilon(a, L, eps);
  define("A_eps", A);
  check_cofinite("A_eps", A);

  NatSet B = s_epsilon(b, L, eps);
  define("B_eps", B);
  check_cofinite("B_eps", B);

  NatSet I1 = X.intersect(A);
  trace.steps.push_back({ProofTrace::Step::Op::Intersect, "I1", {"X", "A_eps"}, I1, std::nullopt, std::nullopt});
  NatSet I2 = I1.intersect(B);
  trace.steps.push_back({ProofTrace::Step::Op::Intersect, "I2", {"I1", "B_eps"}, I2, std::nullopt, std::nullopt});

  NatSet S = s_epsilon(x, L, eps);
  define("S_eps", S);
  bool subset = I2.subset_of(S);
  trace.steps.push_back({ProofTrace::Step::Op::SubsetCheck, "", {"I2", "S_eps"}, std::nullopt, subset, std::nullopt});
  if (!subset) throw InternalInvariant("squeeze: X ∩ A_eps ∩ B_eps escaped S_eps");

  bool concl = S.is_cofinite();
  trace.steps.push_back(
      {ProofTrace::Step::Op::CofiniteCheck, "S_eps", {}, std::nullopt, concl, S.frechet_witness()});
  if (!concl) throw InternalInvariant("squeeze: S_eps failed to be cofinite despite the hypotheses");
  trace.conclusion = true;
  return trace;
}

struct OrderReport {
  Rat limit_a;
  Rat limit_b;
  bool holds = false;
};

// Order preservation: a <= b eventually and both limits exist imply
// lim a <= lim b. A conclusion failure with valid premises would be an
// internal inconsistency, not a domain error.
inline OrderReport order_check(const Germ& a, const Germ& b) {
  LimitVerdict va = robinson_limit(a);
  if (!va.converges()) throw PremiseFailed("the lower sequence does not converge");
  LimitVerdict vb = robinson_limit(b);
  if (!vb.converges()) throw PremiseFailed("the upper sequence does not converge");
  if (!nonneg_set(b - a).is_cofinite())
    throw PremiseFailed("a(n) <= b(n) fails on infinitely many n");
  OrderReport rep{*va.limit, *vb.limit, *va.limit <= *vb.limit};
  if (!rep.holds)
    throw InternalInvariant("order preservation violated with valid premises");
  return rep;
}

}  // namespace starlim
