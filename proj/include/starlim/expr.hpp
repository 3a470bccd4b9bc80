#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starlim/germ.hpp"

namespace starlim {

// Sequence expression tree. Nodes are immutable and shared.
//   expr   := term (("+"|"-") term)* ;
//   term   := factor (("*"|"/") factor)* ;
//   factor := atom ("^" sint)? ;
//   atom   := rational | "n" | "(" expr ")"
//           | "case" "(" uint ";" expr ("," expr)* ")" | "(-1)^n" ;
// Whitespace is insignificant; identifiers other than "n" and "case" are
// rejected. "(-1)^n" is sugar for case(2; 1, -1).
struct SeqExpr;
using SeqExprPtr = std::shared_ptr<const SeqExpr>;

struct SeqExpr {
  enum class Kind { RationalConst, IndexVar, Add, Sub, Mul, Div, IntPow, CaseMod };

  Kind kind;
  Rat value;              // RationalConst
  SeqExprPtr lhs, rhs;    // binary nodes; IntPow uses lhs as the base
  long exponent = 0;      // IntPow
  Nat case_modulus = 0;   // CaseMod
  std::vector<SeqExprPtr> branches;  // CaseMod; branch r applies when n = r mod m

  static SeqExprPtr constant(Rat v) {
    auto e = std::make_shared<SeqExpr>();
    e->kind = Kind::RationalConst;
    e->value = std::move(v);
    return e;
  }
  static SeqExprPtr var() {
    auto e = std::make_shared<SeqExpr>();
    e->kind = Kind::IndexVar;
    return e;
  }
  static SeqExprPtr binary(Kind k, SeqExprPtr a, SeqExprPtr b) {
    auto e = std::make_shared<SeqExpr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  static SeqExprPtr int_pow(SeqExprPtr base, long exponent) {
    auto e = std::make_shared<SeqExpr>();
    e->kind = Kind::IntPow;
    e->lhs = std::move(base);
    e->exponent = exponent;
    return e;
  }
  static SeqExprPtr case_mod(Nat modulus, std::vector<SeqExprPtr> branches) {
    auto e = std::make_shared<SeqExpr>();
    e->kind = Kind::CaseMod;
    e->case_modulus = modulus;
    e->branches = std::move(branches);
    return e;
  }
};

inline bool structurally_equal(const SeqExpr& a, const SeqExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SeqExpr::Kind::RationalConst:
      return a.value == b.value;
    case SeqExpr::Kind::IndexVar:
      return true;
    case SeqExpr::Kind::IntPow:
      return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
    case SeqExpr::Kind::CaseMod: {
      if (a.case_modulus != b.case_modulus || a.branches.size() != b.branches.size()) return false;
      for (std::size_t i = 0; i < a.branches.size(); ++i)
        if (!structurally_equal(*a.branches[i], *b.branches[i])) return false;
      return true;
    }
    default:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

namespace detail {

struct Token {
  enum class Kind { Number, Ident, Punct, End };
  Kind kind;
  std::string text;
  SourceSpan span;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t b = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Token::Kind::Number, std::string(src.substr(b, i - b)), {b, i}});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Token::Kind::Ident, std::string(src.substr(b, i - b)), {b, i}});
    } else if (std::string_view("+-*/^();,").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Token::Kind::Punct, std::string(1, c), {b, i}});
    } else {
      throw SyntaxError("unexpected character", SourceSpan{b, b + 1});
    }
  }
  out.push_back({Token::Kind::End, "", {src.size(), src.size()}});
  return out;
}

class ExprParser {
public:
  explicit ExprParser(std::string_view src) : tokens_(tokenize(src)) {}

  SeqExprPtr run() {
    SeqExprPtr e = parse_expr();
    if (!at_end()) throw SyntaxError("trailing input", peek().span);
    return e;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& advance() { return tokens_[pos_++]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool is_punct(const Token& t, char c) const {
    return t.kind == Token::Kind::Punct && t.text[0] == c;
  }

  void expect_punct(char c, const char* what) {
    if (!is_punct(peek(), c)) throw SyntaxError(std::string("expected '") + c + "' " + what, peek().span);
    advance();
  }

  SeqExprPtr parse_expr() {
    SeqExprPtr e = parse_term();
    while (is_punct(peek(), '+') || is_punct(peek(), '-')) {
      char op = advance().text[0];
      SeqExprPtr r = parse_term();
      e = SeqExpr::binary(op == '+' ? SeqExpr::Kind::Add : SeqExpr::Kind::Sub, e, r);
    }
    return e;
  }

  SeqExprPtr parse_term() {
    SeqExprPtr e = parse_factor();
    while (is_punct(peek(), '*') || is_punct(peek(), '/')) {
      char op = advance().text[0];
      SeqExprPtr r = parse_factor();
      e = SeqExpr::binary(op == '*' ? SeqExpr::Kind::Mul : SeqExpr::Kind::Div, e, r);
    }
    return e;
  }

  SeqExprPtr parse_factor() {
    SeqExprPtr base = parse_atom();
    if (!is_punct(peek(), '^')) return base;
    advance();  // '^'
    // "(-1)^n" sugar: the even/odd alternating sign sequence
    if (peek().kind == Token::Kind::Ident && peek().text == "n") {
      if (base->kind != SeqExpr::Kind::RationalConst || base->value != -1)
        throw SyntaxError("exponent 'n' is only allowed in (-1)^n", peek().span);
      advance();
      return SeqExpr::case_mod(2, {SeqExpr::constant(Rat(1)), SeqExpr::constant(Rat(-1))});
    }
    bool negative = false;
    if (is_punct(peek(), '-')) {
      negative = true;
      advance();
    }
    if (peek().kind != Token::Kind::Number)
      throw SyntaxError("expected integer exponent after '^'", peek().span);
    Token t = advance();
    Int e(t.text);
    if (negative) e = -e;
    if (!mpz_fits_slong_p(e.get_mpz_t()))
      throw ExponentTooLarge("exponent does not fit a machine integer");
    return SeqExpr::int_pow(base, mpz_get_si(e.get_mpz_t()));
  }

  SeqExprPtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number:
        return parse_rational(false);
      case Token::Kind::Punct:
        if (t.text[0] == '-') {
          if (peek(1).kind != Token::Kind::Number)
            throw SyntaxError("expected digits after '-'", peek(1).span);
          return parse_rational(true);
        }
        if (t.text[0] == '(') {
          advance();
          SeqExprPtr inner = parse_expr();
          expect_punct(')', "to close the group");
          return inner;
        }
        throw SyntaxError("unexpected token", t.span);
      case Token::Kind::Ident:
        if (t.text == "n") {
          advance();
          return SeqExpr::var();
        }
        if (t.text == "case") return parse_case();
        throw SyntaxError("unknown identifier '" + t.text + "'", t.span);
      default:
        throw SyntaxError("unexpected end of input", t.span);
    }
  }

  // Rational literal with the greedy rule: a number directly followed by
  // "/ number" is one literal; "/" followed by anything else stays a
  // division operator for the term level.
  SeqExprPtr parse_rational(bool negative) {
    if (negative) advance();  // '-'
    Token numt = advance();
    Int num(numt.text);
    if (negative) num = -num;
    if (is_punct(peek(), '/') && peek(1).kind == Token::Kind::Number) {
      advance();  // '/'
      Token dent = advance();
      Int den(dent.text);
      if (den == 0) throw SyntaxError("zero denominator in rational literal", dent.span);
      return SeqExpr::constant(make_rat(num, den));
    }
    return SeqExpr::constant(Rat(num));
  }

  SeqExprPtr parse_case() {
    Token kw = advance();  // 'case'
    expect_punct('(', "after 'case'");
    if (peek().kind != Token::Kind::Number)
      throw SyntaxError("expected case modulus", peek().span);
    Token mt = advance();
    Int m(mt.text);
    if (m < 2) throw ZeroModulus("case modulus must be at least 2", mt.span);
    if (m > static_cast<unsigned long>(NatSet::kMaxModulus))
      throw ModulusOverflow("case modulus exceeds the supported cap");
    Nat modulus = static_cast<Nat>(mpz_get_ui(m.get_mpz_t()));
    expect_punct(';', "after the case modulus");
    std::vector<SeqExprPtr> branches;
    branches.push_back(parse_expr());
    while (is_punct(peek(), ',')) {
      advance();
      branches.push_back(parse_expr());
    }
    Token close = peek();
    expect_punct(')', "to close 'case'");
    if (branches.size() != modulus)
      throw BranchCountMismatch("case lists " + std::to_string(branches.size()) +
                                    " branches for modulus " + std::to_string(modulus),
                                SourceSpan{kw.span.begin, close.span.end});
    return SeqExpr::case_mod(modulus, std::move(branches));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline int precedence(SeqExpr::Kind k) {
  switch (k) {
    case SeqExpr::Kind::Add:
    case SeqExpr::Kind::Sub:
      return 1;
    case SeqExpr::Kind::Mul:
    case SeqExpr::Kind::Div:
      return 2;
    case SeqExpr::Kind::IntPow:
      return 3;
    default:
      return 4;
  }
}

inline std::string format_expr(const SeqExpr& e);

inline std::string format_wrapped(const SeqExpr& e, bool wrap) {
  std::string s = format_expr(e);
  return wrap ? "(" + s + ")" : s;
}

inline std::string format_expr(const SeqExpr& e) {
  using K = SeqExpr::Kind;
  switch (e.kind) {
    case K::RationalConst:
      return to_string(e.value);
    case K::IndexVar:
      return "n";
    case K::Add:
    case K::Sub: {
      std::string op = e.kind == K::Add ? " + " : " - ";
      bool wrap_rhs = precedence(e.rhs->kind) == 1;  // keep left associativity
      return format_expr(*e.lhs) + op + format_wrapped(*e.rhs, wrap_rhs);
    }
    case K::Mul:
    case K::Div: {
      bool wrap_lhs = precedence(e.lhs->kind) < 2;
      bool wrap_rhs = precedence(e.rhs->kind) <= 2;
      std::string rhs = format_wrapped(*e.rhs, wrap_rhs);
      if (e.kind == K::Div && !wrap_rhs && !rhs.empty() &&
          (std::isdigit(static_cast<unsigned char>(rhs[0])) || rhs[0] == '-')) {
        // guard the greedy rational rule: "a/2" must not fuse with a trailing
        // literal on the left, and "a/-1/2" must not lex as a/(−1/2)
        rhs = "(" + rhs + ")";
      }
      return format_wrapped(*e.lhs, wrap_lhs) + (e.kind == K::Mul ? "*" : "/") + rhs;
    }
    case K::IntPow: {
      bool wrap_base = precedence(e.lhs->kind) < 4;
      return format_wrapped(*e.lhs, wrap_base) + "^" + std::to_string(e.exponent);
    }
    case K::CaseMod: {
      std::string out = "case(" + std::to_string(e.case_modulus) + "; ";
      for (std::size_t i = 0; i < e.branches.size(); ++i) {
        if (i) out += ", ";
        out += format_expr(*e.branches[i]);
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace detail

inline SeqExprPtr parse(std::string_view text) { return detail::ExprParser(text).run(); }

inline std::string format(const SeqExpr& e) { return detail::format_expr(e); }
inline std::string format(const SeqExprPtr& e) { return detail::format_expr(*e); }

// Canonical germ of the sequence the expression denotes. Two expressions
// that agree for all sufficiently large n yield identical germs.
inline Germ to_germ(const SeqExpr& e) {
  using K = SeqExpr::Kind;
  switch (e.kind) {
    case K::RationalConst:
      return Germ::constant(e.value);
    case K::IndexVar:
      return Germ::index();
    case K::Add:
      return to_germ(*e.lhs) + to_germ(*e.rhs);
    case K::Sub:
      return to_germ(*e.lhs) - to_germ(*e.rhs);
    case K::Mul:
      return to_germ(*e.lhs) * to_germ(*e.rhs);
    case K::Div:
      return to_germ(*e.lhs) / to_germ(*e.rhs);
    case K::IntPow: {
      if (e.exponent > 1024 || e.exponent < -1024)
        throw ExponentTooLarge("exponents beyond +/-1024 are not supported");
      return to_germ(*e.lhs).pow(e.exponent);
    }
    case K::CaseMod: {
      std::vector<Germ> branch_germs;
      branch_germs.reserve(e.branches.size());
      for (const auto& b : e.branches) branch_germs.push_back(to_germ(*b));
      Nat m = e.case_modulus;
      Nat floor = 0;
      for (const auto& g : branch_germs) {
        m = lcm_nat_checked(m, g.modulus(), NatSet::kMaxModulus);
        floor = std::max(floor, g.threshold());
      }
      std::vector<RatFunc> pieces(m);
      for (Nat s = 0; s < m; ++s)
        pieces[s] = branch_germs[s % e.case_modulus].piece_for_class(s);
      return Germ::from_pieces(m, std::move(pieces), floor);
    }
  }
  throw InternalInvariant("unhandled expression node");
}

inline Germ to_germ(const SeqExprPtr& e) { return to_germ(*e); }

inline Germ parse_germ(std::string_view text) { return to_germ(parse(text)); }

}  // namespace starlim
