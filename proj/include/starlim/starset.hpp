#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starlim/germ.hpp"

namespace starlim {

// Finite union of rational intervals and isolated rational points,
// canonicalized: pieces sorted, pairwise disjoint, touching pieces merged.
// Internally a point is the degenerate closed interval [v, v].
class RealSetDesc {
public:
  struct Bound {
    bool infinite = false;  // -inf for lo, +inf for hi
    Rat value;
    bool closed = false;
  };

  struct Piece {
    Bound lo, hi;
    bool is_point() const {
      return !lo.infinite && !hi.infinite && lo.value == hi.value;
    }
  };

  RealSetDesc() = default;

  static RealSetDesc empty_set() { return RealSetDesc(); }

  static RealSetDesc whole_line() {
    RealSetDesc s;
    s.pieces_.push_back(Piece{Bound{true, Rat(0), false}, Bound{true, Rat(0), false}});
    return s;
  }

  static RealSetDesc point(Rat v) {
    RealSetDesc s;
    s.pieces_.push_back(Piece{Bound{false, v, true}, Bound{false, v, true}});
    return s;
  }

  static RealSetDesc interval(std::optional<Rat> lo, bool lo_closed, std::optional<Rat> hi,
                              bool hi_closed) {
    if (lo && hi && !(*lo < *hi))
      throw Error("DegenerateInterval", "interval bounds must satisfy lo < hi");
    RealSetDesc s;
    Piece p;
    p.lo = lo ? Bound{false, *lo, lo_closed} : Bound{true, Rat(0), false};
    p.hi = hi ? Bound{false, *hi, hi_closed} : Bound{true, Rat(0), false};
    s.pieces_.push_back(p);
    return s;
  }

  static RealSetDesc from_pieces(std::vector<Piece> pieces) {
    RealSetDesc s;
    s.pieces_ = std::move(pieces);
    s.normalize();
    return s;
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_empty() const { return pieces_.empty(); }

  // Only points, no intervals.
  bool is_finite() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.is_point(); });
  }

  bool contains(const Rat& x) const {
    for (const auto& p : pieces_) {
      bool lo_ok = p.lo.infinite || x > p.lo.value || (p.lo.closed && x == p.lo.value);
      bool hi_ok = p.hi.infinite || x < p.hi.value || (p.hi.closed && x == p.hi.value);
      if (lo_ok && hi_ok) return true;
    }
    return false;
  }

  RealSetDesc complement() const {
    RealSetDesc out;
    Bound cursor{true, Rat(0), false};  // running lower end, starts at -inf
    bool cursor_open_line = true;
    for (const auto& p : pieces_) {
      if (!p.lo.infinite) {
        Piece gap;
        gap.lo = cursor;
        gap.hi = Bound{false, p.lo.value, !p.lo.closed};
        bool degenerate_empty =
            !gap.lo.infinite && (gap.lo.value > gap.hi.value ||
                                 (gap.lo.value == gap.hi.value && !(gap.lo.closed && gap.hi.closed)));
        if (!degenerate_empty) out.pieces_.push_back(gap);
      }
      if (p.hi.infinite) {
        cursor_open_line = false;
        break;
      }
      cursor = Bound{false, p.hi.value, !p.hi.closed};
    }
    if (cursor_open_line) {
      Piece tail;
      tail.lo = cursor;
      tail.hi = Bound{true, Rat(0), false};
      out.pieces_.push_back(tail);
    }
    out.normalize();
    return out;
  }

  RealSetDesc intersect(const RealSetDesc& o) const {
    RealSetDesc out;
    for (const auto& a : pieces_) {
      for (const auto& b : o.pieces_) {
        Bound lo = lower_max(a.lo, b.lo);
        Bound hi = upper_min(a.hi, b.hi);
        if (piece_nonempty(lo, hi)) out.pieces_.push_back(Piece{lo, hi});
      }
    }
    out.normalize();
    return out;
  }

  RealSetDesc unite(const RealSetDesc& o) const {
    std::vector<Piece> all = pieces_;
    all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
    return from_pieces(std::move(all));
  }

  RealSetDesc difference(const RealSetDesc& o) const { return intersect(o.complement()); }

  bool subset_of(const RealSetDesc& o) const { return difference(o).is_empty(); }

  friend bool operator==(const RealSetDesc& a, const RealSetDesc& b) {
    if (a.pieces_.size() != b.pieces_.size()) return false;
    for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
      const Piece &x = a.pieces_[i], &y = b.pieces_[i];
      if (x.lo.infinite != y.lo.infinite || x.hi.infinite != y.hi.infinite) return false;
      if (!x.lo.infinite && (x.lo.value != y.lo.value || x.lo.closed != y.lo.closed)) return false;
      if (!x.hi.infinite && (x.hi.value != y.hi.value || x.hi.closed != y.hi.closed)) return false;
    }
    return true;
  }

  // "(0,2] {3} [5,inf)"
  std::string to_text() const {
    if (pieces_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (i) out += " ";
      if (p.is_point()) {
        out += "{" + to_string(p.lo.value) + "}";
        continue;
      }
      out += p.lo.closed ? "[" : "(";
      out += p.lo.infinite ? "-inf" : to_string(p.lo.value);
      out += ",";
      out += p.hi.infinite ? "inf" : to_string(p.hi.value);
      out += p.hi.closed ? "]" : ")";
    }
    return out;
  }

  static RealSetDesc parse(std::string_view text);

private:
  static Bound lower_max(const Bound& a, const Bound& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    if (a.value != b.value) return a.value > b.value ? a : b;
    return Bound{false, a.value, a.closed && b.closed};
  }

  static Bound upper_min(const Bound& a, const Bound& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    if (a.value != b.value) return a.value < b.value ? a : b;
    return Bound{false, a.value, a.closed && b.closed};
  }

  static bool piece_nonempty(const Bound& lo, const Bound& hi) {
    if (lo.infinite || hi.infinite) return true;
    if (lo.value < hi.value) return true;
    return lo.value == hi.value && lo.closed && hi.closed;
  }

  void normalize() {
    auto lo_less = [](const Piece& a, const Piece& b) {
      if (a.lo.infinite != b.lo.infinite) return a.lo.infinite;
      if (a.lo.infinite) return false;
      if (a.lo.value != b.lo.value) return a.lo.value < b.lo.value;
      return a.lo.closed && !b.lo.closed;
    };
    std::sort(pieces_.begin(), pieces_.end(), lo_less);
    std::vector<Piece> merged;
    for (const auto& p : pieces_) {
      if (!piece_nonempty(p.lo, p.hi)) continue;
      if (merged.empty()) {
        merged.push_back(p);
        continue;
      }
      Piece& last = merged.back();
      bool joins = false;
      if (last.hi.infinite) {
        joins = true;
      } else if (p.lo.infinite) {
        joins = true;  // sorted order makes this only possible for overlapping lines
      } else if (p.lo.value < last.hi.value) {
        joins = true;
      } else if (p.lo.value == last.hi.value && (p.lo.closed || last.hi.closed)) {
        joins = true;
      }
      if (joins) {
        // extend the upper end if p reaches further
        if (!last.hi.infinite &&
            (p.hi.infinite || p.hi.value > last.hi.value ||
             (p.hi.value == last.hi.value && p.hi.closed && !last.hi.closed))) {
          last.hi = p.hi;
        }
      } else {
        merged.push_back(p);
      }
    }
    pieces_ = std::move(merged);
  }

  std::vector<Piece> pieces_;
};

inline RealSetDesc RealSetDesc::parse(std::string_view text) {
  auto fail = [&](const std::string& msg, std::size_t at) -> SyntaxError {
    return SyntaxError("set description: " + msg, SourceSpan{at, std::min(at + 1, text.size())});
  };
  auto read_value = [&](std::size_t& i, bool allow_inf) -> std::optional<Rat> {
    std::size_t b = i;
    while (i < text.size() && text[i] != ',' && text[i] != ')' && text[i] != ']' && text[i] != '}')
      ++i;
    std::string_view tok = text.substr(b, i - b);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    if (allow_inf && (tok == "inf" || tok == "-inf")) return std::nullopt;
    auto q = parse_rat(tok);
    if (!q) throw fail("expected a rational" + std::string(allow_inf ? " or inf" : ""), b);
    return q;
  };

  std::vector<Piece> pieces;
  std::size_t i = 0;
  while (true) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i >= text.size()) break;
    char c = text[i];
    if (c == '{') {
      ++i;
      auto v = read_value(i, false);
      if (i >= text.size() || text[i] != '}') throw fail("expected '}'", i);
      ++i;
      pieces.push_back(Piece{Bound{false, *v, true}, Bound{false, *v, true}});
    } else if (c == '(' || c == '[') {
      bool lo_closed = c == '[';
      ++i;
      auto lo = read_value(i, true);
      if (i >= text.size() || text[i] != ',') throw fail("expected ','", i);
      ++i;
      auto hi = read_value(i, true);
      if (i >= text.size() || (text[i] != ')' && text[i] != ']')) throw fail("expected ')' or ']'", i);
      bool hi_closed = text[i] == ']';
      ++i;
      if (lo && hi && !(*lo < *hi)) throw fail("interval bounds must satisfy lo < hi", i);
      if (!lo && lo_closed) throw fail("'-inf' end cannot be closed", i);
      if (!hi && hi_closed) throw fail("'inf' end cannot be closed", i);
      Piece p;
      p.lo = lo ? Bound{false, *lo, lo_closed} : Bound{true, Rat(0), false};
      p.hi = hi ? Bound{false, *hi, hi_closed} : Bound{true, Rat(0), false};
      pieces.push_back(p);
    } else {
      throw fail("expected '(', '[' or '{'", i);
    }
  }
  return from_pieces(std::move(pieces));
}

// Membership of a germ in the nonstandard extension *A: the selected class
// must land in A for all sufficiently large indices. Point pieces demand the
// piece equals the constant; interval ends reduce to eventual signs.
inline bool star_member(const Germ& x, const RealSetDesc& a, const UltraFragment& u) {
  const RatFunc& f = x.selected_piece(u);
  for (const auto& p : a.pieces()) {
    if (p.is_point()) {
      if (f == RatFunc(p.lo.value)) return true;
      continue;
    }
    bool lo_ok = true;
    if (!p.lo.infinite) {
      int s = (f - RatFunc(p.lo.value)).eventual_sign();
      lo_ok = s > 0 || (s == 0 && p.lo.closed);
    }
    bool hi_ok = true;
    if (!p.hi.infinite) {
      int s = (f - RatFunc(p.hi.value)).eventual_sign();
      hi_ok = s < 0 || (s == 0 && p.hi.closed);
    }
    if (lo_ok && hi_ok) return true;
  }
  return false;
}

class NotHypernatural : public Error {
public:
  enum class Reason { NonPolynomial, NonIntegerValued, EventuallyNegative };

  NotHypernatural(const std::string& msg, Reason reason)
      : Error("NotHypernatural", msg), reason_(reason) {}

  Reason reason() const { return reason_; }

  static const char* reason_text(Reason r) {
    switch (r) {
      case Reason::NonPolynomial:
        return "non-polynomial";
      case Reason::NonIntegerValued:
        return "non-integer-valued";
      case Reason::EventuallyNegative:
        return "eventually negative";
    }
    return "";
  }

private:
  Reason reason_;
};

// A germ certified to be a hypernatural: its selected class reduces to a
// polynomial that takes integer values and is eventually nonnegative.
// Integer-valuedness at deg+1 consecutive integers extends to all integers
// (binomial basis), so the check is exact.
class HyperNat {
public:
  static HyperNat certify(const Germ& x, const UltraFragment& u) {
    const RatFunc& f = x.selected_piece(u);
    auto [quot, rem] = f.num().divmod(f.den());
    if (!rem.is_zero())
      throw NotHypernatural("selected class is not a polynomial sequence",
                            NotHypernatural::Reason::NonPolynomial);
    const Polynomial& p = quot;
    int d = std::max(p.degree(), 0);
    for (int t = 0; t <= d; ++t) {
      Rat v = p.eval(Int(t));
      if (v.get_den() != 1)
        throw NotHypernatural("selected class takes non-integer values",
                              NotHypernatural::Reason::NonIntegerValued);
    }
    if (p.degree() >= 1) {
      if (sign(p.leading()) < 0)
        throw NotHypernatural("selected class is eventually negative",
                              NotHypernatural::Reason::EventuallyNegative);
    } else if (p.constant_value() < 0) {
      throw NotHypernatural("selected class is a negative constant",
                            NotHypernatural::Reason::EventuallyNegative);
    }
    return HyperNat(x, p);
  }

  const Germ& germ() const { return germ_; }
  const Polynomial& poly() const { return poly_; }

  bool is_standard() const { return poly_.degree() <= 0; }

  std::optional<Nat> standard_value() const {
    if (!is_standard()) return std::nullopt;
    return to_nat_checked(Int(poly_.constant_value().get_num()), "standard hypernatural");
  }

private:
  HyperNat(Germ g, Polynomial p) : germ_(std::move(g)), poly_(std::move(p)) {}

  Germ germ_;
  Polynomial poly_;
};

// The hypersequence value a(omega): substitute the certified polynomial into
// the matching pieces of a. omega(t) mod m is periodic in t with period
// dividing m * lcm(coefficient denominators), which drives the class split.
inline Germ compose(const Germ& a, const HyperNat& omega) {
  const Polynomial& p = omega.poly();
  if (p.degree() <= 0) {
    Nat v = *omega.standard_value();
    if (v < a.threshold())
      throw DomainTooSmall("constant hypernatural lies below the germ's domain tail");
    std::optional<Rat> val = a.eval(v);
    if (!val) throw DomainTooSmall("constant hypernatural hits a pole");
    return Germ::constant(*val);
  }
  Nat m = a.modulus();
  Nat denom_lcm = to_nat_checked(p.denominator_lcm(), "composition period");
  if (denom_lcm == 0 || m > NatSet::kMaxModulus / denom_lcm)
    throw ModulusOverflow("composition period exceeds the modulus cap");
  Nat period = m * denom_lcm;
  std::vector<RatFunc> pieces(period);
  for (Nat c = 0; c < period; ++c) {
    Rat vc = p.eval(Int(static_cast<unsigned long>(c)));
    Int r_int;
    Int mz(static_cast<unsigned long>(m));
    mpz_fdiv_r(r_int.get_mpz_t(), vc.get_num_mpz_t(), mz.get_mpz_t());
    Nat r = static_cast<Nat>(mpz_get_ui(r_int.get_mpz_t()));
    pieces[c] = a.piece_for_class(r).compose_poly(p);
  }
  // the argument must have climbed past a's threshold
  Polynomial past_threshold = p - Polynomial(Rat(Int(static_cast<unsigned long>(a.threshold()))));
  Int u0 = fujiwara_root_bound(past_threshold) + 1;
  Nat floor = to_nat_checked(u0, "composition threshold");
  return Germ::from_pieces(period, std::move(pieces), floor);
}

}  // namespace starlim
