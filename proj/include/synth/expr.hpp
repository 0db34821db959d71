#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "synth/poly.hpp"

namespace synth {

// Arithmetic expression tree for system dynamics. Polynomial dynamics
// convert losslessly to Poly; sin/cos/tan keep a model simulatable but make
// it ineligible for certification.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class EKind { Const, Variable, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Tan };

struct Expr {
  EKind kind;
  double value = 0.0;  // Const
  Var var;             // Variable
  int exponent = 1;    // Pow
  ExprPtr lhs, rhs;

  static ExprPtr constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = EKind::Const;
    e->value = v;
    return e;
  }
  static ExprPtr variable(Var v) {
    auto e = std::make_shared<Expr>();
    e->kind = EKind::Variable;
    e->var = v;
    return e;
  }
  static ExprPtr unary(EKind k, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    return e;
  }
  static ExprPtr binary(EKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  static ExprPtr power(ExprPtr a, int n) {
    auto e = std::make_shared<Expr>();
    e->kind = EKind::Pow;
    e->lhs = std::move(a);
    e->exponent = n;
    return e;
  }
};

inline double eval(const Expr& e, std::span<const double> x, std::span<const double> u,
                   std::span<const double> w) {
  switch (e.kind) {
    case EKind::Const:
      return e.value;
    case EKind::Variable: {
      const std::span<const double>& vals =
          e.var.kind == Var::Kind::State ? x : (e.var.kind == Var::Kind::Input ? u : w);
      if (e.var.index >= (int)vals.size())
        throw std::out_of_range("expr eval: missing assignment for " + e.var.name());
      return vals[e.var.index];
    }
    case EKind::Add: return eval(*e.lhs, x, u, w) + eval(*e.rhs, x, u, w);
    case EKind::Sub: return eval(*e.lhs, x, u, w) - eval(*e.rhs, x, u, w);
    case EKind::Mul: return eval(*e.lhs, x, u, w) * eval(*e.rhs, x, u, w);
    case EKind::Div: return eval(*e.lhs, x, u, w) / eval(*e.rhs, x, u, w);
    case EKind::Neg: return -eval(*e.lhs, x, u, w);
    case EKind::Pow: return std::pow(eval(*e.lhs, x, u, w), e.exponent);
    case EKind::Sin: return std::sin(eval(*e.lhs, x, u, w));
    case EKind::Cos: return std::cos(eval(*e.lhs, x, u, w));
    case EKind::Tan: return std::tan(eval(*e.lhs, x, u, w));
  }
  return 0.0;  // unreachable
}

inline std::optional<Poly> to_poly(const Expr& e) {
  switch (e.kind) {
    case EKind::Const:
      return Poly::constant(e.value);
    case EKind::Variable:
      return Poly::variable(e.var);
    case EKind::Add: {
      auto a = to_poly(*e.lhs), b = to_poly(*e.rhs);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case EKind::Sub: {
      auto a = to_poly(*e.lhs), b = to_poly(*e.rhs);
      if (!a || !b) return std::nullopt;
      return *a - *b;
    }
    case EKind::Mul: {
      auto a = to_poly(*e.lhs), b = to_poly(*e.rhs);
      if (!a || !b) return std::nullopt;
      return *a * *b;
    }
    case EKind::Div: {
      auto a = to_poly(*e.lhs);
      if (!a || e.rhs->kind != EKind::Const || e.rhs->value == 0.0) return std::nullopt;
      return (1.0 / e.rhs->value) * *a;
    }
    case EKind::Neg: {
      auto a = to_poly(*e.lhs);
      if (!a) return std::nullopt;
      return -1.0 * *a;
    }
    case EKind::Pow: {
      auto a = to_poly(*e.lhs);
      if (!a || e.exponent < 0) return std::nullopt;
      return a->pow(e.exponent);
    }
    default:
      return std::nullopt;  // trigonometric
  }
}

inline bool mentions_noise(const Expr& e) {
  switch (e.kind) {
    case EKind::Const: return false;
    case EKind::Variable: return e.var.kind == Var::Kind::Noise;
    default:
      return (e.lhs && mentions_noise(*e.lhs)) || (e.rhs && mentions_noise(*e.rhs));
  }
}

struct ExprParseError : std::runtime_error {
  size_t position;
  ExprParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  ExprPtr run() {
    skip_ws();
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) throw ExprParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& text_;
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
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (true) {
      if (eat('+'))
        e = Expr::binary(EKind::Add, e, parse_term());
      else if (eat('-'))
        e = Expr::binary(EKind::Sub, e, parse_term());
      else
        return e;
    }
  }
  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (true) {
      if (eat('*'))
        e = Expr::binary(EKind::Mul, e, parse_factor());
      else if (eat('/'))
        e = Expr::binary(EKind::Div, e, parse_factor());
      else
        return e;
    }
  }
  ExprPtr parse_factor() {
    if (eat('-')) return Expr::unary(EKind::Neg, parse_factor());
    if (eat('+')) return parse_factor();
    ExprPtr base = parse_primary();
    if (eat('^')) {
      skip_ws();
      size_t start = pos_;
      bool neg = eat('-');
      size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
      if (pos_ == dstart) throw ExprParseError("expected integer exponent", start);
      int n = std::stoi(text_.substr(dstart, pos_ - dstart));
      if (neg) throw ExprParseError("negative exponents not supported", start);
      return Expr::power(base, n);
    }
    return base;
  }
  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ExprParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit((unsigned char)c) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!eat(')')) throw ExprParseError("expected ')'", pos_);
      return e;
    }
    if (std::isalpha((unsigned char)c)) return parse_ident();
    throw ExprParseError(std::string("unexpected character '") + c + "'", pos_);
  }
  ExprPtr parse_number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit((unsigned char)text_[pos_]) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
      } else {
        pos_ = save;  // 'e' belonged to something else
      }
    }
    try {
      return Expr::constant(std::stod(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ExprParseError("malformed number", start);
    }
  }
  ExprPtr parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_')) ++pos_;
    std::string id = text_.substr(start, pos_ - start);
    if (id == "sin" || id == "cos" || id == "tan") {
      if (!eat('(')) throw ExprParseError("expected '(' after " + id, pos_);
      ExprPtr arg = parse_sum();
      if (!eat(')')) throw ExprParseError("expected ')'", pos_);
      EKind k = id == "sin" ? EKind::Sin : (id == "cos" ? EKind::Cos : EKind::Tan);
      return Expr::unary(k, arg);
    }
    if (id.size() >= 2 && (id[0] == 'x' || id[0] == 'u' || id[0] == 'w')) {
      bool digits = true;
      for (size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit((unsigned char)id[i])) digits = false;
      if (digits) {
        int idx = std::stoi(id.substr(1)) - 1;
        if (idx < 0) throw ExprParseError("variable indices start at 1", start);
        Var::Kind k = id[0] == 'x' ? Var::Kind::State
                                   : (id[0] == 'u' ? Var::Kind::Input : Var::Kind::Noise);
        return Expr::variable(Var{k, idx});
      }
    }
    throw ExprParseError("unknown identifier '" + id + "'", start);
  }
};

}  // namespace detail

inline ExprPtr parse_expr(const std::string& text) { return detail::ExprParser(text).run(); }

inline Poly parse_poly(const std::string& text) {
  auto p = to_poly(*parse_expr(text));
  if (!p) throw std::invalid_argument("not a polynomial expression: " + text);
  return *p;
}

// Inequality in the forms "a <= b", "a >= b" or a bare expression; the
// result g satisfies the original inequality iff g(x) >= 0.
inline Poly parse_inequality(const std::string& text) {
  auto le = text.find("<=");
  auto ge = text.find(">=");
  if (le != std::string::npos)
    return parse_poly(text.substr(le + 2)) - parse_poly(text.substr(0, le));
  if (ge != std::string::npos)
    return parse_poly(text.substr(0, ge)) - parse_poly(text.substr(ge + 2));
  return parse_poly(text);
}

}  // namespace synth
