#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace synth {

// Atomic propositions p0..pM. Per Remark-style single-label semantics each
// trace position carries exactly one proposition, so the proposition set
// doubles as the DFA alphabet.
struct PropositionSet {
  std::vector<std::string> names;

  int index_of(const std::string& id) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == id) return (int)i;
    return -1;
  }
  int size() const { return (int)names.size(); }
  const std::string& name(int i) const { return names.at(i); }
};

// Finite, non-empty word over the proposition indices.
using Trace = std::vector<int>;

enum class FKind { True, AP, Not, And, Or, Next, Eventually, Always, Until };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable LTLf syntax tree. Arity is fixed by the kind: Not/Next/
// Eventually/Always take one child, And/Or/Until two, True/AP none.
struct Formula {
  FKind kind;
  int ap = -1;  // payload for AP nodes
  FormulaPtr lhs, rhs;

  Formula(FKind k, int a, FormulaPtr l, FormulaPtr r)
      : kind(k), ap(a), lhs(std::move(l)), rhs(std::move(r)) {}
};

inline FormulaPtr f_true() {
  static const FormulaPtr t = std::make_shared<Formula>(FKind::True, -1, nullptr, nullptr);
  return t;
}
inline FormulaPtr f_ap(int idx) {
  return std::make_shared<Formula>(FKind::AP, idx, nullptr, nullptr);
}
inline FormulaPtr f_not(FormulaPtr a) {
  return std::make_shared<Formula>(FKind::Not, -1, std::move(a), nullptr);
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(FKind::And, -1, std::move(a), std::move(b));
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(FKind::Or, -1, std::move(a), std::move(b));
}
inline FormulaPtr f_next(FormulaPtr a) {
  return std::make_shared<Formula>(FKind::Next, -1, std::move(a), nullptr);
}
inline FormulaPtr f_eventually(FormulaPtr a) {
  return std::make_shared<Formula>(FKind::Eventually, -1, std::move(a), nullptr);
}
inline FormulaPtr f_always(FormulaPtr a) {
  return std::make_shared<Formula>(FKind::Always, -1, std::move(a), nullptr);
}
inline FormulaPtr f_until(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(FKind::Until, -1, std::move(a), std::move(b));
}
// The grammar has no false literal; canonical false is !true.
inline FormulaPtr f_false() {
  static const FormulaPtr f = f_not(f_true());
  return f;
}

inline bool is_false(const FormulaPtr& f) {
  return f->kind == FKind::Not && f->lhs->kind == FKind::True;
}
inline bool is_true(const FormulaPtr& f) { return f->kind == FKind::True; }

// Total structural order; used for canonical operand sorting.
inline int formula_cmp(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return (int)a->kind < (int)b->kind ? -1 : 1;
  if (a->kind == FKind::AP) return a->ap < b->ap ? -1 : (a->ap > b->ap ? 1 : 0);
  if (a->lhs) {
    int c = formula_cmp(a->lhs, b->lhs);
    if (c != 0) return c;
  }
  if (a->rhs) return formula_cmp(a->rhs, b->rhs);
  return 0;
}
inline bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  return formula_cmp(a, b) == 0;
}

namespace detail {

inline void flatten(FKind k, const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == k) {
    flatten(k, f->lhs, out);
    flatten(k, f->rhs, out);
  } else {
    out.push_back(f);
  }
}

inline FormulaPtr rebuild(FKind k, const std::vector<FormulaPtr>& parts) {
  FormulaPtr acc = parts.back();
  for (int i = (int)parts.size() - 2; i >= 0; --i)
    acc = std::make_shared<Formula>(k, -1, parts[i], acc);
  return acc;
}

}  // namespace detail

// Canonical simplification: constant folding, double-negation elimination,
// n-ary flattening of &/| with sorted, deduplicated operands, and the
// suffix-safe temporal folds G true -> true and F !true -> !true. Folds that
// change acceptance of the empty suffix (e.g. psi U true -> true) are
// deliberately not performed; the automaton translation relies on that.
inline FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::AP:
      return f;
    case FKind::Not: {
      FormulaPtr a = simplify(f->lhs);
      if (a->kind == FKind::Not) return a->lhs;
      return f_not(a);
    }
    case FKind::And:
    case FKind::Or: {
      const bool conj = f->kind == FKind::And;
      FormulaPtr l = simplify(f->lhs), r = simplify(f->rhs);
      std::vector<FormulaPtr> parts;
      detail::flatten(f->kind, l, parts);
      detail::flatten(f->kind, r, parts);
      std::sort(parts.begin(), parts.end(),
                [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) < 0; });
      std::vector<FormulaPtr> keep;
      for (const auto& p : parts) {
        if (conj ? is_true(p) : is_false(p)) continue;            // neutral element
        if (conj ? is_false(p) : is_true(p)) return conj ? f_false() : f_true();
        if (!keep.empty() && formula_eq(keep.back(), p)) continue;  // idempotence
        keep.push_back(p);
      }
      // complement pair collapses the whole connective
      for (const auto& p : keep) {
        if (p->kind != FKind::Not) continue;
        for (const auto& q : keep)
          if (formula_eq(p->lhs, q)) return conj ? f_false() : f_true();
      }
      if (keep.empty()) return conj ? f_true() : f_false();
      if (keep.size() == 1) return keep[0];
      return detail::rebuild(f->kind, keep);
    }
    case FKind::Next:
      return f_next(simplify(f->lhs));
    case FKind::Eventually: {
      FormulaPtr a = simplify(f->lhs);
      if (is_false(a)) return f_false();
      return f_eventually(a);
    }
    case FKind::Always: {
      FormulaPtr a = simplify(f->lhs);
      if (is_true(a)) return f_true();
      return f_always(a);
    }
    case FKind::Until:
      return f_until(simplify(f->lhs), simplify(f->rhs));
  }
  return f;  // unreachable
}

// Language complement: top-level negation plus canonical simplification
// (which removes double negations).
inline FormulaPtr negate(const FormulaPtr& f) { return simplify(f_not(f)); }

namespace detail {

inline int precedence(FKind k) {
  switch (k) {
    case FKind::Or: return 1;
    case FKind::And: return 2;
    case FKind::Until: return 3;
    default: return 4;  // unary and atoms
  }
}

inline void print_rec(const FormulaPtr& f, const PropositionSet& props, std::string& out,
                      int parent_prec) {
  const int prec = precedence(f->kind);
  const bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (f->kind) {
    case FKind::True: out += "true"; break;
    case FKind::AP: out += props.name(f->ap); break;
    case FKind::Not:
      out += '!';
      print_rec(f->lhs, props, out, 4);
      break;
    case FKind::Next:
      out += "X ";
      print_rec(f->lhs, props, out, 4);
      break;
    case FKind::Eventually:
      out += "F ";
      print_rec(f->lhs, props, out, 4);
      break;
    case FKind::Always:
      out += "G ";
      print_rec(f->lhs, props, out, 4);
      break;
    case FKind::And:
      print_rec(f->lhs, props, out, prec);
      out += " & ";
      print_rec(f->rhs, props, out, prec + 1);
      break;
    case FKind::Or:
      print_rec(f->lhs, props, out, prec);
      out += " | ";
      print_rec(f->rhs, props, out, prec + 1);
      break;
    case FKind::Until:
      print_rec(f->lhs, props, out, prec + 1);
      out += " U ";
      print_rec(f->rhs, props, out, prec);  // right associative
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline std::string pretty_print(const FormulaPtr& f, const PropositionSet& props) {
  std::string out;
  detail::print_rec(f, props, out, 0);
  return out;
}

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {

// Recursive-descent parser for the concrete syntax
//   phi := or ; or := and ('|' and)* ; and := until ('&' until)*
//   until := unary ('U' until)? ; unary := '!'|'X'|'F'|'G' unary | atom
class FormulaParser {
 public:
  FormulaParser(const std::string& text, const PropositionSet& props)
      : text_(text), props_(props) {}

  FormulaPtr run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty formula", 0);
    FormulaPtr f = parse_or();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  const std::string& text_;
  const PropositionSet& props_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek_keyword(const char* kw) {
    skip_ws();
    size_t n = std::strlen(kw);
    if (text_.compare(pos_, n, kw) != 0) return false;
    // keywords are standalone words
    size_t after = pos_ + n;
    if (after < text_.size() && (std::isalnum((unsigned char)text_[after]) || text_[after] == '_'))
      return false;
    return true;
  }
  bool eat_keyword(const char* kw) {
    if (!peek_keyword(kw)) return false;
    pos_ += std::strlen(kw);
    return true;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (eat('|')) f = f_or(f, parse_and());
    return f;
  }
  FormulaPtr parse_and() {
    FormulaPtr f = parse_until();
    while (eat('&')) f = f_and(f, parse_until());
    return f;
  }
  FormulaPtr parse_until() {
    FormulaPtr f = parse_unary();
    if (eat_keyword("U")) return f_until(f, parse_until());
    return f;
  }
  FormulaPtr parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (eat('!')) return f_not(parse_unary());
    if (eat_keyword("X")) return f_next(parse_unary());
    if (eat_keyword("F")) return f_eventually(parse_unary());
    if (eat_keyword("G")) return f_always(parse_unary());
    if (eat('(')) {
      FormulaPtr f = parse_or();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (eat_keyword("true")) return f_true();
    return parse_ap();
  }
  FormulaPtr parse_ap() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw ParseError("expected proposition or '('", pos_);
    std::string id = text_.substr(start, pos_ - start);
    int idx = props_.index_of(id);
    if (idx < 0) throw ParseError("unknown proposition '" + id + "'", start);
    return f_ap(idx);
  }
};

}  // namespace detail

inline FormulaPtr parse(const std::string& text, const PropositionSet& props) {
  return detail::FormulaParser(text, props).run();
}

// Finite-trace satisfaction sigma,i |= phi, computed by backward dynamic
// programming over positions so that U/F/G cost O(|sigma|) each.
inline bool evaluate(const FormulaPtr& f, const Trace& sigma, size_t i) {
  if (sigma.empty()) throw std::invalid_argument("evaluate: empty trace");
  if (i >= sigma.size()) throw std::out_of_range("evaluate: position out of range");
  const size_t n = sigma.size();
  switch (f->kind) {
    case FKind::True:
      return true;
    case FKind::AP:
      return sigma[i] == f->ap;
    case FKind::Not:
      return !evaluate(f->lhs, sigma, i);
    case FKind::And:
      return evaluate(f->lhs, sigma, i) && evaluate(f->rhs, sigma, i);
    case FKind::Or:
      return evaluate(f->lhs, sigma, i) || evaluate(f->rhs, sigma, i);
    case FKind::Next:
      return i + 1 < n && evaluate(f->lhs, sigma, i + 1);
    case FKind::Eventually:
      for (size_t j = i; j < n; ++j)
        if (evaluate(f->lhs, sigma, j)) return true;
      return false;
    case FKind::Always:
      for (size_t j = i; j < n; ++j)
        if (!evaluate(f->lhs, sigma, j)) return false;
      return true;
    case FKind::Until:
      for (size_t j = i; j < n; ++j) {
        if (evaluate(f->rhs, sigma, j)) return true;
        if (!evaluate(f->lhs, sigma, j)) return false;
      }
      return false;
  }
  return false;  // unreachable
}

inline bool evaluate(const FormulaPtr& f, const Trace& sigma) { return evaluate(f, sigma, 0); }

}  // namespace synth
