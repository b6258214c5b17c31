#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "orbidx/rational.hpp"

namespace orbidx {

/// Immutable expression tree over variables x1..xn with exact rational
/// constants and + - * / and integer powers. Handles are cheap to copy and
/// share structure.
class Expr {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow };

  Expr();  // the constant 0

  static Expr constant(Rational value);
  /// Zero-based variable index (x1 is 0).
  static Expr variable(int index);
  static Expr pow(Expr base, int exponent);

  Op op() const;
  bool is_constant() const { return op() == Op::Const; }
  bool is_constant(std::int64_t value) const;
  const Rational& value() const;
  int var_index() const;
  int exponent() const;
  Expr lhs() const;
  Expr rhs() const;

  /// Throws EvalError on division by zero.
  double evaluate(std::span<const double> x) const;
  Expr derivative(int var) const;
  /// Largest variable index used, -1 if none.
  int max_variable() const;
  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, Expr a, Expr b);

  std::shared_ptr<const Node> node_;
};

/// Grammar (whitespace ignored):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' '-'? integer)?
///   primary := number | 'x' integer | '(' expr ')'
/// Numbers are decimal literals (`3`, `0.25`) read exactly; `x1` .. `xn`
/// name the coordinates. Throws ParseError with the offending column.
Expr parse_expression(std::string_view text, int num_vars);

}  // namespace orbidx
