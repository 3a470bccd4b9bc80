#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starlim/filters.hpp"
#include "starlim/rational_function.hpp"
#include "starlim/roots.hpp"

namespace starlim {

enum class Ordering { Less, Equal, Greater };
enum class FrechetOrdering { LessEq, GreaterEq, Equal, Incomparable };

struct Classification {
  bool infinitesimal = false;
  bool finite = false;
  bool infinitely_large = false;
  bool standard = false;
  std::optional<Rat> standard_value;
};

// A hyperreal germ: a residue-class-piecewise rational function of n.
// pieces[r] gives the sequence value at every n >= threshold with
// n mod modulus == r. The modulus is minimal (identical pieces collapse)
// and each piece is reduced with a monic denominator, so germs that agree
// on a tail have identical modulus and pieces. The threshold is
// operational metadata (all denominators are root-free from it on) and
// does not participate in equality: germs are classes modulo agreement
// for all sufficiently large n.
class Germ {
public:
  Germ() : modulus_(1), threshold_(0), pieces_{RatFunc()} {}

  static Germ constant(Rat value) {
    Germ g;
    g.pieces_ = {RatFunc(std::move(value))};
    return g;
  }

  // The germ of the index sequence itself.
  static Germ index() {
    Germ g;
    g.pieces_ = {RatFunc::variable()};
    return g;
  }

  // `floor_threshold` lets callers keep the result's validity range inside
  // the range where the inputs were defined (poles that cancel away still
  // bound where the original expression makes sense).
  static Germ from_pieces(Nat modulus, std::vector<RatFunc> pieces, Nat floor_threshold = 0) {
    if (modulus == 0 || modulus > NatSet::kMaxModulus)
      throw ModulusOverflow("germ modulus must be in [1, 2^20]");
    if (pieces.size() != modulus)
      throw Error("BadPieceCount", "piece count must equal the modulus");
    Germ g;
    g.modulus_ = modulus;
    g.pieces_ = std::move(pieces);
    g.threshold_ = floor_threshold;
    g.canonicalize();
    return g;
  }

  Nat modulus() const { return modulus_; }
  Nat threshold() const { return threshold_; }
  const std::vector<RatFunc>& pieces() const { return pieces_; }

  const RatFunc& piece_for_class(Nat r) const { return pieces_[r % modulus_]; }

  const RatFunc& selected_piece(const UltraFragment& u) const {
    return pieces_[u.residue(modulus_)];
  }

  bool is_zero() const { return modulus_ == 1 && pieces_[0].is_zero(); }

  // Value of the canonical representative at n; nullopt at denominator zeros.
  std::optional<Rat> eval(Nat n) const {
    return pieces_[n % modulus_].eval(Int(static_cast<unsigned long>(n)));
  }

  friend Germ operator+(const Germ& a, const Germ& b) {
    return a.combine(b, [](const RatFunc& x, const RatFunc& y) { return x + y; });
  }
  friend Germ operator-(const Germ& a, const Germ& b) {
    return a.combine(b, [](const RatFunc& x, const RatFunc& y) { return x - y; });
  }
  friend Germ operator*(const Germ& a, const Germ& b) {
    return a.combine(b, [](const RatFunc& x, const RatFunc& y) { return x * y; });
  }

  friend Germ operator-(const Germ& a) {
    std::vector<RatFunc> p;
    p.reserve(a.pieces_.size());
    for (const auto& f : a.pieces_) p.push_back(-f);
    return from_pieces(a.modulus_, std::move(p), a.threshold_);
  }

  // Pointwise division of sequences. A divisor class that is identically
  // zero has no tail on which the quotient exists and is an error; isolated
  // zeros are poles and only raise the threshold.
  friend Germ operator/(const Germ& a, const Germ& b) {
    Nat m = lcm_nat_checked(a.modulus_, b.modulus_, NatSet::kMaxModulus);
    Nat floor = std::max(a.threshold_, b.threshold_);
    std::vector<RatFunc> p(m);
    for (Nat r = 0; r < m; ++r) {
      const RatFunc& x = a.piece_for_class(r);
      const RatFunc& y = b.piece_for_class(r);
      if (y.is_zero())
        throw DivisionByZeroGerm("division by a sequence that vanishes on a whole residue class");
      // poles appear where the divisor's numerator vanishes
      Int bound = cauchy_root_bound_floor(y.num()) + 1;
      floor = std::max(floor, to_nat_checked(bound, "division pole bound"));
      p[r] = x / y;
    }
    return from_pieces(m, std::move(p), floor);
  }

  // x^k for integer k; negative exponents divide 1 by the positive power.
  Germ pow(long exponent) const {
    if (exponent < 0) return constant(Rat(1)) / pow(-exponent);
    Germ acc = constant(Rat(1));
    Germ base = *this;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // Fragment-relative multiplicative inverse with zero padding: classes
  // whose piece is identically zero stay zero, everything else is
  // reciprocated. Requires the selected class to be nonzero.
  Germ inverse(const UltraFragment& u) const {
    if (selected_piece(u).is_zero())
      throw DivisionByZeroGerm("inverse of a germ that is zero relative to the fragment");
    std::vector<RatFunc> p(modulus_);
    Nat floor = threshold_;
    for (Nat r = 0; r < modulus_; ++r) {
      if (pieces_[r].is_zero()) {
        p[r] = RatFunc();
      } else {
        Int bound = cauchy_root_bound_floor(pieces_[r].num()) + 1;
        floor = std::max(floor, to_nat_checked(bound, "inverse pole bound"));
        p[r] = pieces_[r].reciprocal();
      }
    }
    return from_pieces(modulus_, std::move(p), floor);
  }

  Ordering compare(const Germ& y, const UltraFragment& u) const {
    Germ d = *this - y;
    int s = d.selected_piece(u).eventual_sign();
    if (s == 0) return Ordering::Equal;
    return s > 0 ? Ordering::Greater : Ordering::Less;
  }

  bool equals_relative(const Germ& y, const UltraFragment& u) const {
    return compare(y, u) == Ordering::Equal;
  }

  // Partial order of the plain Frechet quotient: no fragment involved, so
  // classes with opposite eventual signs are simply incomparable.
  FrechetOrdering frechet_compare(const Germ& y) const {
    Germ d = *this - y;
    bool some_pos = false, some_neg = false;
    for (const auto& f : d.pieces_) {
      int s = f.eventual_sign();
      if (s > 0) some_pos = true;
      if (s < 0) some_neg = true;
    }
    if (some_pos && some_neg) return FrechetOrdering::Incomparable;
    if (some_pos) return FrechetOrdering::GreaterEq;
    if (some_neg) return FrechetOrdering::LessEq;
    return FrechetOrdering::Equal;
  }

  Classification classify(const UltraFragment& u) const {
    const RatFunc& f = selected_piece(u);
    Classification c;
    int dn = f.num().degree();
    int dd = f.den().degree();
    c.infinitesimal = f.is_zero() || dn < dd;
    c.infinitely_large = dn > dd;
    c.finite = !c.infinitely_large;
    c.standard = f.is_constant();
    if (c.standard) c.standard_value = f.constant_value();
    return c;
  }

  // st(x): the unique real r with x - r infinitesimal (finite x only).
  Rat standard_part(const UltraFragment& u) const {
    const RatFunc& f = selected_piece(u);
    int dn = f.num().degree();
    int dd = f.den().degree();
    if (dn > dd) throw NotFinite("standard part of an infinitely large germ");
    if (dn < dd) return Rat(0);
    return f.num().leading() / f.den().leading();
  }

  bool is_near(const Germ& y, const UltraFragment& u) const {
    return (*this - y).classify(u).infinitesimal;
  }

  friend bool operator==(const Germ& a, const Germ& b) {
    return a.modulus_ == b.modulus_ && a.pieces_ == b.pieces_;
  }

  // Expression-grammar rendering; pieces are rational functions of n.
  std::string format() const {
    if (modulus_ == 1) return format_ratfunc(pieces_[0]);
    std::string out = "case(" + std::to_string(modulus_) + "; ";
    for (Nat r = 0; r < modulus_; ++r) {
      if (r) out += ", ";
      out += format_ratfunc(pieces_[r]);
    }
    out += ")";
    return out;
  }

private:
  template <typename F>
  Germ combine(const Germ& o, F op) const {
    Nat m = lcm_nat_checked(modulus_, o.modulus_, NatSet::kMaxModulus);
    std::vector<RatFunc> p(m);
    for (Nat r = 0; r < m; ++r) p[r] = op(piece_for_class(r), o.piece_for_class(r));
    return from_pieces(m, std::move(p), std::max(threshold_, o.threshold_));
  }

  void canonicalize() {
    for (Nat d = 1; d <= modulus_ / 2; ++d) {
      if (modulus_ % d != 0) continue;
      bool periodic = true;
      for (Nat r = 0; r < modulus_ && periodic; ++r)
        if (!(pieces_[r] == pieces_[r % d])) periodic = false;
      if (periodic) {
        pieces_.resize(d);
        modulus_ = d;
        break;
      }
    }
    for (const auto& f : pieces_) {
      if (f.den().degree() <= 0) continue;
      Int bound = cauchy_root_bound_floor(f.den()) + 1;
      threshold_ = std::max(threshold_, to_nat_checked(bound, "germ threshold"));
    }
  }

  Nat modulus_;
  Nat threshold_;
  std::vector<RatFunc> pieces_;
};

// The order-preserving field embedding r -> <r, r, r, ...>.
inline Germ embed(Rat r) { return Germ::constant(std::move(r)); }

}  // namespace starlim
