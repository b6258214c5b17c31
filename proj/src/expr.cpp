#include "orbidx/expr.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "orbidx/errors.hpp"

namespace orbidx {

struct Expr::Node {
  Op op = Op::Const;
  Rational value{0};
  int index = 0;  // variable index or exponent
  std::shared_ptr<const Node> a, b;
};

namespace {

using i128 = __int128;

std::optional<Rational> reduce(i128 num, i128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) num = -num, den = -den;
  i128 x = num < 0 ? -num : num, y = den;
  while (y != 0) {
    i128 t = x % y;
    x = y;
    y = t;
  }
  if (x > 1) num /= x, den /= x;
  constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || num < -lim || den > lim) return std::nullopt;
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::optional<Rational> checked_add(const Rational& p, const Rational& q, bool subtract) {
  i128 n = i128(p.numerator()) * q.denominator();
  i128 m = i128(q.numerator()) * p.denominator();
  return reduce(subtract ? n - m : n + m, i128(p.denominator()) * q.denominator());
}

std::optional<Rational> checked_mul(const Rational& p, const Rational& q) {
  return reduce(i128(p.numerator()) * q.numerator(), i128(p.denominator()) * q.denominator());
}

std::optional<Rational> checked_div(const Rational& p, const Rational& q) {
  if (q.numerator() == 0) return std::nullopt;
  return reduce(i128(p.numerator()) * q.denominator(), i128(p.denominator()) * q.numerator());
}

std::optional<Rational> checked_pow(Rational base, int e) {
  if (e < 0) {
    if (base.numerator() == 0) return std::nullopt;
    base = Rational(1) / base;
    e = -e;
  }
  Rational out(1);
  for (int i = 0; i < e; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

}  // namespace

Expr::Expr() {
  static const auto zero = std::make_shared<const Node>();
  node_ = zero;
}

Expr Expr::constant(Rational value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::make(Op op, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a.node_);
  n->b = std::move(b.node_);
  return Expr(std::move(n));
}

Expr::Op Expr::op() const { return node_->op; }
bool Expr::is_constant(std::int64_t v) const { return is_constant() && node_->value == Rational(v); }
const Rational& Expr::value() const { return node_->value; }
int Expr::var_index() const { return node_->index; }
int Expr::exponent() const { return node_->index; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    if (auto v = checked_add(a.value(), b.value(), false)) return Expr::constant(*v);
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    if (auto v = checked_add(a.value(), b.value(), true)) return Expr::constant(*v);
  if (b.is_constant(0)) return a;
  if (a.is_constant(0)) return -b;
  return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    if (auto v = checked_mul(a.value(), b.value())) return Expr::constant(*v);
  if (a.is_constant(0) || b.is_constant(0)) return Expr::constant(0);
  if (a.is_constant(1)) return b;
  if (b.is_constant(1)) return a;
  if (a.is_constant(-1)) return -b;
  if (b.is_constant(-1)) return -a;
  return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    if (auto v = checked_div(a.value(), b.value())) return Expr::constant(*v);
  if (a.is_constant(0) && !b.is_constant(0)) return Expr::constant(0);
  if (b.is_constant(1)) return a;
  return Expr::make(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.op() == Expr::Op::Neg) return a.lhs();
  return Expr::make(Expr::Op::Neg, a, Expr());
}

Expr Expr::pow(Expr base, int exponent) {
  if (exponent == 0) return constant(1);
  if (exponent == 1) return base;
  if (base.is_constant())
    if (auto v = checked_pow(base.value(), exponent)) return constant(*v);
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->a = std::move(base.node_);
  n->index = exponent;
  return Expr(std::move(n));
}

double Expr::evaluate(std::span<const double> x) const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::Const: return to_double(n.value);
    case Op::Var: return x[n.index];
    case Op::Add: return a.evaluate(x) + b.evaluate(x);
    case Op::Sub: return a.evaluate(x) - b.evaluate(x);
    case Op::Mul: return a.evaluate(x) * b.evaluate(x);
    case Op::Neg: return -a.evaluate(x);
    case Op::Div: {
      double d = b.evaluate(x);
      if (d == 0.0) fail(ErrorCode::EvalError, "division by zero in " + to_string());
      return a.evaluate(x) / d;
    }
    case Op::Pow: {
      double base = a.evaluate(x);
      if (n.index < 0 && base == 0.0) fail(ErrorCode::EvalError, "negative power of zero in " + to_string());
      double out = 1.0;
      for (int i = 0; i < std::abs(n.index); ++i) out *= base;
      return n.index < 0 ? 1.0 / out : out;
    }
  }
  return 0.0;
}

Expr Expr::derivative(int var) const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::Const: return constant(0);
    case Op::Var: return constant(n.index == var ? 1 : 0);
    case Op::Add: return a.derivative(var) + b.derivative(var);
    case Op::Sub: return a.derivative(var) - b.derivative(var);
    case Op::Neg: return -a.derivative(var);
    case Op::Mul: return a.derivative(var) * b + a * b.derivative(var);
    case Op::Div:
      return (a.derivative(var) * b - a * b.derivative(var)) / pow(b, 2);
    case Op::Pow:
      return constant(n.index) * pow(a, n.index - 1) * a.derivative(var);
  }
  return constant(0);
}

int Expr::max_variable() const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::Const: return -1;
    case Op::Var: return n.index;
    case Op::Neg:
    case Op::Pow: return a.max_variable();
    default: return std::max(a.max_variable(), b.max_variable());
  }
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::Const:
      return n.value.denominator() == 1 && n.value.numerator() >= 0 ? orbidx::to_string(n.value)
                                                                     : "(" + orbidx::to_string(n.value) + ")";
    case Op::Var: return "x" + std::to_string(n.index + 1);
    case Op::Add: return "(" + a.to_string() + " + " + b.to_string() + ")";
    case Op::Sub: return "(" + a.to_string() + " - " + b.to_string() + ")";
    case Op::Mul: return a.to_string() + "*" + b.to_string();
    case Op::Div: return a.to_string() + "/" + b.to_string();
    case Op::Neg: return "(-" + a.to_string() + ")";
    case Op::Pow:
      return (a.op() == Op::Var || a.op() == Op::Const ? a.to_string() : "(" + a.to_string() + ")") +
             "^" + std::to_string(n.index);
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int num_vars) : text_(text), num_vars_(num_vars) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = e * unary();
      else if (accept('/')) e = e / unary();
      else return e;
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip();
    std::int64_t k = integer();
    if (k > 64) error("exponent too large");
    return Expr::pow(base, static_cast<int>(negative ? -k : k));
  }

  std::int64_t integer() {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) error("expected integer");
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) error("integer literal too long");
      v = v * 10 + (text_[pos_++] - '0');
    }
    return v;
  }

  Expr primary() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (c == 'x') {
      ++pos_;
      std::int64_t k = integer();
      if (k < 1 || k > num_vars_) error("variable x" + std::to_string(k) + " outside x1..x" + std::to_string(num_vars_));
      return Expr::variable(static_cast<int>(k - 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    error("unexpected character");
  }

  Expr number() {
    std::int64_t whole = 0, frac = 0, scale = 1;
    if (text_[pos_] != '.') whole = integer();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (scale > std::numeric_limits<std::int64_t>::max() / 100) error("decimal literal too long");
        frac = frac * 10 + (text_[pos_++] - '0');
        scale *= 10;
      }
    }
    auto v = reduce(i128(whole) * scale + frac, scale);
    if (!v) error("decimal literal too long");
    return Expr::constant(*v);
  }

  std::string_view text_;
  int num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, int num_vars) { return Parser(text, num_vars).parse(); }

}  // namespace orbidx
