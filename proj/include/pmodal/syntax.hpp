// Formulas of the probability logic: first-order connectives and
// quantifiers, level-annotated probability operators with interval
// subscripts, and the alethic operators box/dia.
//
// Concrete grammar (whitespace-insensitive):
//
//   formula := quant | impl
//   quant   := ("forall" | "exists") IDENT "." formula
//   impl    := orf ("->" impl)?
//   orf     := andf ("|" orf)?
//   andf    := unary ("&" andf)?
//   unary   := "~" unary | "box" unary | "dia" unary | probOp
//            | "(" formula ")" | atom
//   probOp  := ("P" | "P1" | "P2") "[" NUM ("," NUM)? "]" "(" formula ")"
//   atom    := IDENT ("(" term ("," term)* ")")?
//   NUM     := decimal | p/q
//
// A term whose name is bound by an enclosing quantifier is a variable. An
// unbound term is a constant if the signature declares it or if it starts
// with an uppercase letter; otherwise it is a free variable.

#ifndef PMODAL_SYNTAX_HPP_
#define PMODAL_SYNTAX_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmodal/errors.hpp"
#include "pmodal/rational.hpp"

namespace pmodal {

/// Closed interval [lo, hi] with 0 <= lo <= hi <= 1.
class Interval {
 public:
  Interval() : lo_(0), hi_(1) {}
  Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ < 0 || hi_ > 1 || lo_ > hi_) {
      throw Error("invalid probability interval [" + to_string(lo_) + "," + to_string(hi_) + "]");
    }
  }
  static Interval point(const Rational& p) { return Interval(p, p); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }
  friend bool operator<(const Interval& a, const Interval& b) {
    return a.lo_ < b.lo_ || (a.lo_ == b.lo_ && a.hi_ < b.hi_);
  }

 private:
  Rational lo_;
  Rational hi_;
};

/// `1/2` for a point, `1/2,3/4` otherwise.
inline std::string to_string(const Interval& i) {
  return i.is_point() ? to_string(i.lo()) : to_string(i.lo()) + "," + to_string(i.hi());
}

struct Term {
  enum class Kind : std::uint8_t { kVariable, kConstant };
  Kind kind;
  std::string name;

  static Term variable(std::string n) { return {Kind::kVariable, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::kConstant, std::move(n)}; }
  bool is_variable() const { return kind == Kind::kVariable; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Level : std::uint8_t { kUnresolved = 0, kFirst = 1, kSecond = 2 };

/// Immutable formula tree; copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    kAtom, kNot, kAnd, kOr, kImplies, kForall, kExists, kProb, kBox, kDia
  };

  static Formula atom(std::string predicate, std::vector<Term> args = {}) {
    Node n;
    n.kind = Kind::kAtom;
    n.name = std::move(predicate);
    n.args = std::move(args);
    return Formula(std::move(n));
  }
  static Formula negation(Formula f) { return unary(Kind::kNot, std::move(f)); }
  static Formula box(Formula f) { return unary(Kind::kBox, std::move(f)); }
  static Formula dia(Formula f) { return unary(Kind::kDia, std::move(f)); }
  static Formula conj(Formula a, Formula b) { return binary(Kind::kAnd, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::kOr, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) {
    return binary(Kind::kImplies, std::move(a), std::move(b));
  }
  static Formula forall(std::string var, Formula body) {
    return quantifier(Kind::kForall, std::move(var), std::move(body));
  }
  static Formula exists(std::string var, Formula body) {
    return quantifier(Kind::kExists, std::move(var), std::move(body));
  }
  static Formula prob(Level level, Interval interval, Formula body) {
    Node n;
    n.kind = Kind::kProb;
    n.level = level;
    n.interval = std::move(interval);
    n.children.push_back(std::move(body));
    return Formula(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  /// Atom predicate name.
  const std::string& predicate() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  /// Bound variable of a quantifier.
  const std::string& variable() const { return node_->name; }
  Level level() const { return node_->level; }
  const Interval& interval() const { return node_->interval; }

  /// Operand of a unary node, body of a quantifier or probability operator.
  const Formula& sub() const { return node_->children.at(0); }
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }
  const std::vector<Formula>& children() const { return node_->children; }

  /// Structural equality.
  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.args == y.args && x.level == y.level &&
           x.interval == y.interval && x.children == y.children;
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
    Level level = Level::kUnresolved;
    Interval interval;
  };

  explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static Formula unary(Kind k, Formula f) {
    Node n;
    n.kind = k;
    n.children.push_back(std::move(f));
    return Formula(std::move(n));
  }
  static Formula binary(Kind k, Formula a, Formula b) {
    Node n;
    n.kind = k;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return Formula(std::move(n));
  }
  static Formula quantifier(Kind k, std::string var, Formula body) {
    Node n;
    n.kind = k;
    n.name = std::move(var);
    n.children.push_back(std::move(body));
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

/// Optional declarations checked by the parser.
struct Signature {
  std::map<std::string, std::size_t> arities;
  std::set<std::string> constants;
};

namespace detail {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "box" || s == "dia";
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* signature)
      : text_(text), signature_(signature) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  enum class Tok : std::uint8_t {
    kEnd, kIdent, kNumber, kLParen, kRParen, kLBracket, kRBracket, kComma, kDot,
    kAnd, kOr, kArrow, kNot
  };

  struct Token {
    Tok tok;
    std::string text;
    std::size_t pos;
  };

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

  std::pair<std::size_t, std::size_t> location(std::size_t at) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return {line, column};
  }

  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    auto [line, column] = location(at);
    throw SyntaxError(what, line, column);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Token peek() {
    std::size_t saved = pos_;
    Token t = next();
    pos_ = saved;
    return t;
  }

  // Identifiers may contain '-' when it joins two identifier characters, so
  // `Plays-sax` is one name while `A->B` is an implication.
  Token next() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::kEnd, "", start};
    char c = text_[pos_];
    auto single = [&](Tok t) {
      ++pos_;
      return Token{t, std::string(1, c), start};
    };
    if (is_ident_start(c)) {
      while (pos_ < text_.size()) {
        if (is_ident_char(text_[pos_])) {
          ++pos_;
        } else if (text_[pos_] == '-' && pos_ + 1 < text_.size() && is_ident_char(text_[pos_ + 1])) {
          ++pos_;
        } else {
          break;
        }
      }
      return {Tok::kIdent, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '/')) {
        ++pos_;
      }
      return {Tok::kNumber, std::string(text_.substr(start, pos_ - start)), start};
    }
    switch (c) {
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case '[': return single(Tok::kLBracket);
      case ']': return single(Tok::kRBracket);
      case ',': return single(Tok::kComma);
      case '.': return single(Tok::kDot);
      case '&': return single(Tok::kAnd);
      case '|': return single(Tok::kOr);
      case '~': return single(Tok::kNot);
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          return {Tok::kArrow, "->", start};
        }
        break;
      default:
        break;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Token expect(Tok t, const char* what) {
    Token tok = next();
    if (tok.tok != t) fail_at(std::string("expected ") + what, tok.pos);
    return tok;
  }

  Formula formula() {
    Token t = peek();
    if (t.tok == Tok::kIdent && (t.text == "forall" || t.text == "exists")) {
      next();
      Token var = expect(Tok::kIdent, "variable name");
      if (is_keyword(var.text)) fail_at("keyword used as variable", var.pos);
      expect(Tok::kDot, "'.' after quantified variable");
      bound_.push_back(var.text);
      Formula body = formula();
      bound_.pop_back();
      return t.text == "forall" ? Formula::forall(var.text, std::move(body))
                                : Formula::exists(var.text, std::move(body));
    }
    return implication();
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().tok == Tok::kArrow) {
      next();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (peek().tok == Tok::kOr) {
      next();
      return Formula::disj(std::move(lhs), disjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (peek().tok == Tok::kAnd) {
      next();
      return Formula::conj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula unary() {
    Token t = next();
    switch (t.tok) {
      case Tok::kNot:
        return Formula::negation(unary());
      case Tok::kLParen: {
        Formula f = formula();
        expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kIdent:
        break;
      default:
        fail_at("expected a formula", t.pos);
    }
    if (t.text == "box") return Formula::box(unary());
    if (t.text == "dia") return Formula::dia(unary());
    if (t.text == "forall" || t.text == "exists") {
      fail_at("quantifier must be parenthesized here", t.pos);
    }
    if ((t.text == "P" || t.text == "P1" || t.text == "P2") && peek().tok == Tok::kLBracket) {
      return probability(t);
    }
    return atom(t);
  }

  Rational number() {
    Token t = next();
    if (t.tok != Tok::kNumber) fail_at("expected a probability", t.pos);
    auto q = parse_rational(t.text);
    if (!q) fail_at("malformed number '" + t.text + "'", t.pos);
    if (*q > 1) fail_at("probability " + t.text + " exceeds 1", t.pos);
    return *q;
  }

  Formula probability(const Token& op) {
    Level level = op.text == "P1"   ? Level::kFirst
                  : op.text == "P2" ? Level::kSecond
                                    : Level::kUnresolved;
    Token open = expect(Tok::kLBracket, "'['");
    Rational lo = number();
    Rational hi = lo;
    if (peek().tok == Tok::kComma) {
      next();
      hi = number();
    }
    expect(Tok::kRBracket, "']'");
    if (lo > hi) fail_at("empty probability interval", open.pos);
    expect(Tok::kLParen, "'(' after probability subscript");
    Formula body = formula();
    expect(Tok::kRParen, "')'");
    return Formula::prob(level, Interval(lo, hi), std::move(body));
  }

  Term term() {
    Token t = expect(Tok::kIdent, "term");
    if (is_keyword(t.text)) fail_at("keyword used as term", t.pos);
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (*it == t.text) return Term::variable(t.text);
    }
    if (signature_ && signature_->constants.count(t.text)) return Term::constant(t.text);
    if (std::islower(static_cast<unsigned char>(t.text[0]))) return Term::variable(t.text);
    return Term::constant(t.text);
  }

  Formula atom(const Token& name) {
    if (is_keyword(name.text)) fail_at("unexpected keyword '" + name.text + "'", name.pos);
    std::vector<Term> args;
    if (peek().tok == Tok::kLParen) {
      next();
      args.push_back(term());
      while (peek().tok == Tok::kComma) {
        next();
        args.push_back(term());
      }
      expect(Tok::kRParen, "')' after terms");
    }
    if (signature_) {
      auto it = signature_->arities.find(name.text);
      if (it != signature_->arities.end() && it->second != args.size()) {
        auto [line, column] = location(name.pos);
        throw ArityError("predicate " + name.text + " expects " + std::to_string(it->second) +
                             " argument(s), got " + std::to_string(args.size()),
                         line, column);
      }
    }
    return Formula::atom(name.text, std::move(args));
  }

  std::string_view text_;
  const Signature* signature_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace detail

/// Parses a formula. Probability levels are kept as written; bare `P` stays
/// unresolved until resolve_levels.
inline Formula parse(std::string_view text) { return detail::Parser(text, nullptr).parse(); }

inline Formula parse(std::string_view text, const Signature& signature) {
  return detail::Parser(text, &signature).parse();
}

inline bool contains_prob(const Formula& f) {
  if (f.is(Formula::Kind::kProb)) return true;
  for (const auto& c : f.children()) {
    if (contains_prob(c)) return true;
  }
  return false;
}

inline bool contains_modal(const Formula& f) {
  if (f.is(Formula::Kind::kBox) || f.is(Formula::Kind::kDia)) return true;
  for (const auto& c : f.children()) {
    if (contains_modal(c)) return true;
  }
  return false;
}

/// Maximum number of nested probability operators.
inline int prob_depth(const Formula& f) {
  int inner = 0;
  for (const auto& c : f.children()) inner = std::max(inner, prob_depth(c));
  return inner + (f.is(Formula::Kind::kProb) ? 1 : 0);
}

/// Maximum number of nested box/dia operators.
inline int modal_depth(const Formula& f) {
  int inner = 0;
  for (const auto& c : f.children()) inner = std::max(inner, modal_depth(c));
  return inner + (f.is(Formula::Kind::kBox) || f.is(Formula::Kind::kDia) ? 1 : 0);
}

/// True when no node is a probability operator with unresolved level.
inline bool levels_resolved(const Formula& f) {
  if (f.is(Formula::Kind::kProb) && f.level() == Level::kUnresolved) return false;
  for (const auto& c : f.children()) {
    if (!levels_resolved(c)) return false;
  }
  return true;
}

/// No quantifiers and only zero-arity atoms.
inline bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kForall:
    case Formula::Kind::kExists:
      return false;
    case Formula::Kind::kAtom:
      return f.args().empty();
    default:
      for (const auto& c : f.children()) {
        if (!is_propositional(c)) return false;
      }
      return true;
  }
}

/// Predicate names in order of first occurrence.
inline void collect_predicates(const Formula& f, std::vector<std::string>& out) {
  if (f.is(Formula::Kind::kAtom)) {
    if (std::find(out.begin(), out.end(), f.predicate()) == out.end()) out.push_back(f.predicate());
    return;
  }
  for (const auto& c : f.children()) collect_predicates(c, out);
}

inline std::vector<std::string> predicates(const Formula& f) {
  std::vector<std::string> out;
  collect_predicates(f, out);
  return out;
}

namespace detail {

inline Formula resolve(const Formula& f, int enclosing) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      return f;
    case K::kProb: {
      Level want = enclosing == 0 ? Level::kSecond : Level::kFirst;
      if (enclosing >= 2) throw DepthError("probability operators nested deeper than two");
      if (f.level() != Level::kUnresolved && f.level() != want) {
        throw DepthError(f.level() == Level::kFirst ? "P1 must occur inside a P2 operator"
                                                    : "P2 must not occur inside another probability operator");
      }
      return Formula::prob(want, f.interval(), resolve(f.sub(), enclosing + 1));
    }
    case K::kNot: return Formula::negation(resolve(f.sub(), enclosing));
    case K::kBox: return Formula::box(resolve(f.sub(), enclosing));
    case K::kDia: return Formula::dia(resolve(f.sub(), enclosing));
    case K::kAnd: return Formula::conj(resolve(f.lhs(), enclosing), resolve(f.rhs(), enclosing));
    case K::kOr: return Formula::disj(resolve(f.lhs(), enclosing), resolve(f.rhs(), enclosing));
    case K::kImplies:
      return Formula::implies(resolve(f.lhs(), enclosing), resolve(f.rhs(), enclosing));
    case K::kForall: return Formula::forall(f.variable(), resolve(f.sub(), enclosing));
    case K::kExists: return Formula::exists(f.variable(), resolve(f.sub(), enclosing));
  }
  return f;
}

}  // namespace detail

/// Assigns level 2 to unenclosed probability operators and level 1 to those
/// directly inside one. Idempotent.
inline Formula resolve_levels(const Formula& f) {
  if (contains_prob(f) && contains_modal(f)) {
    throw MixedModalityError("box/dia cannot be combined with probability operators");
  }
  return detail::resolve(f, 0);
}

namespace detail {

inline int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kForall:
    case Formula::Kind::kExists: return 0;
    case Formula::Kind::kImplies: return 1;
    case Formula::Kind::kOr: return 2;
    case Formula::Kind::kAnd: return 3;
    default: return 4;
  }
}

inline void render_into(const Formula& f, int min_prec, std::string& out);

inline void render_node(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      out += f.predicate();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += f.args()[i].name;
        }
        out += ')';
      }
      return;
    case K::kNot:
      out += '~';
      render_into(f.sub(), 4, out);
      return;
    case K::kBox:
      out += "box ";
      render_into(f.sub(), 4, out);
      return;
    case K::kDia:
      out += "dia ";
      render_into(f.sub(), 4, out);
      return;
    case K::kAnd:
      render_into(f.lhs(), 4, out);
      out += " & ";
      render_into(f.rhs(), 3, out);
      return;
    case K::kOr:
      render_into(f.lhs(), 3, out);
      out += " | ";
      render_into(f.rhs(), 2, out);
      return;
    case K::kImplies:
      render_into(f.lhs(), 2, out);
      out += " -> ";
      render_into(f.rhs(), 1, out);
      return;
    case K::kForall:
    case K::kExists:
      out += f.is(K::kForall) ? "forall " : "exists ";
      out += f.variable();
      out += ". ";
      render_into(f.sub(), 0, out);
      return;
    case K::kProb:
      out += f.level() == Level::kFirst ? "P1[" : f.level() == Level::kSecond ? "P2[" : "P[";
      out += to_string(f.interval());
      out += "](";
      render_into(f.sub(), 0, out);
      out += ')';
      return;
  }
}

inline void render_into(const Formula& f, int min_prec, std::string& out) {
  bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  render_node(f, out);
  if (parens) out += ')';
}

}  // namespace detail

/// Canonical text with minimal parentheses; parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, 0, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render(f); }

namespace detail {

inline void free_vars(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      for (const auto& t : f.args()) {
        if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end()) {
          out.insert(t.name);
        }
      }
      return;
    case Formula::Kind::kForall:
    case Formula::Kind::kExists:
      bound.push_back(f.variable());
      free_vars(f.sub(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children()) free_vars(c, bound, out);
  }
}

}  // namespace detail

/// Variables with an occurrence not bound by an enclosing quantifier.
/// Probability operators bind nothing.
inline std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  detail::free_vars(f, bound, out);
  return out;
}

}  // namespace pmodal

#endif  // PMODAL_SYNTAX_HPP_
