#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphpde::expr {

/// Value and t-derivative carried through forward-mode evaluation.
struct Dual {
  double value = 0.0;
  double derivative = 0.0;
};

/// Names an expression may reference besides `t`: per-vertex coefficients
/// (resolved to a slot at parse time) and scalar parameters (inlined with
/// their value but printed by name).
class SymbolTable {
 public:
  /// Returns the slot of the coefficient, adding it if new.
  int add_coefficient(const std::string& name);
  void add_parameter(const std::string& name, double value);

  bool has_coefficient(std::string_view name) const;
  int coefficient_slot(std::string_view name) const;
  bool has_parameter(std::string_view name) const;
  double parameter(std::string_view name) const;

  const std::vector<std::string>& coefficient_names() const noexcept { return coefficients_; }
  std::size_t coefficient_count() const noexcept { return coefficients_.size(); }

 private:
  std::vector<std::string> coefficients_;
  std::map<std::string, double, std::less<>> parameters_;
};

enum class Op : std::uint8_t {
  Constant,
  Variable,
  Coefficient,
  Parameter,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
  Abs,
  Sgn,
  Exp,
  Log,
  PowSgn,
};

struct Node {
  Op op = Op::Constant;
  double value = 0.0;  // Constant and Parameter
  int slot = -1;       // Coefficient
  std::string name;    // Coefficient and Parameter
  int lhs = -1;
  int rhs = -1;
};

/// Parsed expression in t. Grammar, loosest to tightest:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          (right-associative)
///   primary := number | t | name | name '(' args ')' | '(' sum ')'
/// Functions: abs, sgn, exp, log (one argument), powsgn(x, q) = sgn(x)|x|^q.
class Expression {
 public:
  Expression() = default;

  /// Throws SyntaxError or UnknownIdentifier; messages carry line:column.
  static Expression parse(std::string_view source, const SymbolTable& symbols);

  /// Throws EvalError outside the domain (log of a non-positive number,
  /// division by zero, zero to a negative power, non-finite results).
  Dual evaluate(double t, std::span<const double> coefficients) const;
  double value(double t, std::span<const double> coefficients) const {
    return evaluate(t, coefficients).value;
  }
  double derivative(double t, std::span<const double> coefficients) const {
    return evaluate(t, coefficients).derivative;
  }

  /// Fully parenthesized text that parses back to an identical tree.
  std::string to_string() const;

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Structural equality of the trees (constants compared exactly).
  friend bool operator==(const Expression& a, const Expression& b);

  // Construction helpers (used by the parser and by random tree generators).
  int add(Node node);
  void set_root(int root) { root_ = root; }
  int root() const noexcept { return root_; }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }

 private:
  Dual eval_node(int i, double t, std::span<const double> coefficients) const;
  void print_node(int i, std::string& out) const;

  std::vector<Node> nodes_;
  int root_ = -1;
};

inline Expression parse_expression(std::string_view source, const SymbolTable& symbols) {
  return Expression::parse(source, symbols);
}

/// Number formatting shared by expression printing and machine output:
/// 17 significant digits, shortest %g form.
std::string format_double(double v);

}  // namespace graphpde::expr
