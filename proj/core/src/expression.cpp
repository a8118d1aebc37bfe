#include <graphpde/expression.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include <graphpde/error.hpp>

namespace graphpde::expr {

// ---------------------------------------------------------------------------
// SymbolTable

int SymbolTable::add_coefficient(const std::string& name) {
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == name) return static_cast<int>(i);
  }
  coefficients_.push_back(name);
  return static_cast<int>(coefficients_.size() - 1);
}

void SymbolTable::add_parameter(const std::string& name, double value) {
  parameters_[name] = value;
}

bool SymbolTable::has_coefficient(std::string_view name) const {
  for (const auto& c : coefficients_) {
    if (c == name) return true;
  }
  return false;
}

int SymbolTable::coefficient_slot(std::string_view name) const {
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool SymbolTable::has_parameter(std::string_view name) const {
  return parameters_.find(name) != parameters_.end();
}

double SymbolTable::parameter(std::string_view name) const {
  auto it = parameters_.find(name);
  return it == parameters_.end() ? 0.0 : it->second;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view src, const SymbolTable& symbols, Expression& out)
      : src_(src), symbols_(symbols), out_(out) {}

  int parse_all() {
    skip_ws();
    if (pos_ >= src_.size()) fail(ErrorCode::SyntaxError, "empty expression");
    const int root = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) fail(ErrorCode::SyntaxError, "unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& what) const { fail_at(code, what, pos_); }

  [[noreturn]] void fail_at(ErrorCode code, const std::string& what, std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << line << ":" << col << ": " << what;
    throw Error(code, os.str());
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(ErrorCode::SyntaxError, std::string("expected '") + c + "'");
  }

  int binary(Op op, int l, int r) {
    Node n;
    n.op = op;
    n.lhs = l;
    n.rhs = r;
    return out_.add(std::move(n));
  }

  int parse_sum() {
    int lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return binary(Op::Neg, parse_unary(), -1);
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (accept('^')) return binary(Op::Pow, base, parse_unary());
    return base;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  int parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(ErrorCode::SyntaxError, "unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (ident_start(c)) return parse_identifier();
    fail(ErrorCode::SyntaxError, std::string("unexpected '") + c + "'");
  }

  int parse_number() {
    const std::size_t start = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
    if (ec != std::errc()) fail(ErrorCode::SyntaxError, "malformed number");
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    if (pos_ < src_.size() && ident_char(src_[pos_])) {
      fail_at(ErrorCode::SyntaxError, "malformed number", start);
    }
    Node n;
    n.op = Op::Constant;
    n.value = v;
    return out_.add(std::move(n));
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));

    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      ++pos_;
      return parse_call(name, start);
    }

    Node n;
    if (name == "t") {
      n.op = Op::Variable;
    } else if (symbols_.has_coefficient(name)) {
      n.op = Op::Coefficient;
      n.slot = symbols_.coefficient_slot(name);
      n.name = name;
    } else if (symbols_.has_parameter(name)) {
      n.op = Op::Parameter;
      n.value = symbols_.parameter(name);
      n.name = name;
    } else {
      fail_at(ErrorCode::UnknownIdentifier, "unknown identifier '" + name + "'", start);
    }
    return out_.add(std::move(n));
  }

  int parse_call(const std::string& name, std::size_t start) {
    Op op;
    int arity = 1;
    if (name == "abs") {
      op = Op::Abs;
    } else if (name == "sgn") {
      op = Op::Sgn;
    } else if (name == "exp") {
      op = Op::Exp;
    } else if (name == "log") {
      op = Op::Log;
    } else if (name == "powsgn") {
      op = Op::PowSgn;
      arity = 2;
    } else {
      fail_at(ErrorCode::UnknownIdentifier, "unknown function '" + name + "'", start);
    }
    const int a = parse_sum();
    int b = -1;
    if (arity == 2) {
      expect(',');
      b = parse_sum();
    }
    expect(')');
    return binary(op, a, b);
  }

  std::string_view src_;
  const SymbolTable& symbols_;
  Expression& out_;
  std::size_t pos_ = 0;
};

[[noreturn]] void eval_fail(const std::string& what) { throw Error(ErrorCode::EvalError, what); }

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

Expression Expression::parse(std::string_view source, const SymbolTable& symbols) {
  Expression e;
  Parser parser(source, symbols, e);
  e.root_ = parser.parse_all();
  return e;
}

int Expression::add(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size() - 1);
}

// ---------------------------------------------------------------------------
// Evaluation

Dual Expression::evaluate(double t, std::span<const double> coefficients) const {
  if (root_ < 0) eval_fail("empty expression");
  const Dual r = eval_node(root_, t, coefficients);
  if (!std::isfinite(r.value) || !std::isfinite(r.derivative)) {
    eval_fail("non-finite result at t = " + format_double(t));
  }
  return r;
}

Dual Expression::eval_node(int i, double t, std::span<const double> coefficients) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::Constant:
    case Op::Parameter:
      return {n.value, 0.0};
    case Op::Variable:
      return {t, 1.0};
    case Op::Coefficient:
      if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= coefficients.size()) {
        eval_fail("coefficient '" + n.name + "' is not bound");
      }
      return {coefficients[static_cast<std::size_t>(n.slot)], 0.0};
    default:
      break;
  }

  const Dual a = eval_node(n.lhs, t, coefficients);
  switch (n.op) {
    case Op::Neg:
      return {-a.value, -a.derivative};
    case Op::Abs:
      return {std::abs(a.value), sign_of(a.value) * a.derivative};
    case Op::Sgn:
      return {sign_of(a.value), 0.0};
    case Op::Exp: {
      const double e = std::exp(a.value);
      return {e, e * a.derivative};
    }
    case Op::Log:
      if (!(a.value > 0.0)) eval_fail("log of non-positive value " + format_double(a.value));
      return {std::log(a.value), a.derivative / a.value};
    default:
      break;
  }

  const Dual b = eval_node(n.rhs, t, coefficients);
  switch (n.op) {
    case Op::Add:
      return {a.value + b.value, a.derivative + b.derivative};
    case Op::Sub:
      return {a.value - b.value, a.derivative - b.derivative};
    case Op::Mul:
      return {a.value * b.value, a.derivative * b.value + a.value * b.derivative};
    case Op::Div:
      if (b.value == 0.0) eval_fail("division by zero");
      return {a.value / b.value,
              (a.derivative * b.value - a.value * b.derivative) / (b.value * b.value)};
    case Op::Pow: {
      if (b.derivative == 0.0) {
        const double q = b.value;
        if (a.value == 0.0 && q < 0.0) eval_fail("zero raised to a negative power");
        if (a.value < 0.0 && q != std::trunc(q)) eval_fail("negative base with fractional power");
        const double v = std::pow(a.value, q);
        if (a.derivative == 0.0 || q == 0.0) return {v, 0.0};
        if (a.value == 0.0 && q < 1.0) eval_fail("unbounded derivative of x^q at x = 0");
        return {v, q * std::pow(a.value, q - 1.0) * a.derivative};
      }
      if (!(a.value > 0.0)) eval_fail("variable exponent requires a positive base");
      const double v = std::pow(a.value, b.value);
      return {v, v * (b.derivative * std::log(a.value) + b.value * a.derivative / a.value)};
    }
    case Op::PowSgn: {
      const double x = a.value;
      const double q = b.value;
      const double ax = std::abs(x);
      if (ax == 0.0) {
        if (q < 0.0) eval_fail("powsgn(0, q) with q < 0");
        if (a.derivative == 0.0) return {0.0, 0.0};
        if (q > 1.0) return {0.0, 0.0};
        if (q == 1.0) return {0.0, a.derivative};
        eval_fail("unbounded derivative of powsgn(x, q) at x = 0 with q < 1");
      }
      const double v = sign_of(x) * std::pow(ax, q);
      double d = q * std::pow(ax, q - 1.0) * a.derivative;
      if (b.derivative != 0.0) d += v * std::log(ax) * b.derivative;
      return {v, d};
    }
    default:
      break;
  }
  eval_fail("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Printing and comparison

void Expression::print_node(int i, std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  auto infix = [&](const char* op) {
    out += '(';
    print_node(n.lhs, out);
    out += op;
    print_node(n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* fn) {
    out += fn;
    out += '(';
    print_node(n.lhs, out);
    if (n.rhs >= 0) {
      out += ", ";
      print_node(n.rhs, out);
    }
    out += ')';
  };
  switch (n.op) {
    case Op::Constant: out += format_double(n.value); break;
    case Op::Variable: out += 't'; break;
    case Op::Coefficient:
    case Op::Parameter: out += n.name; break;
    case Op::Add: infix(" + "); break;
    case Op::Sub: infix(" - "); break;
    case Op::Mul: infix(" * "); break;
    case Op::Div: infix(" / "); break;
    case Op::Pow: infix(" ^ "); break;
    case Op::Neg:
      out += "(-";
      print_node(n.lhs, out);
      out += ')';
      break;
    case Op::Abs: call("abs"); break;
    case Op::Sgn: call("sgn"); break;
    case Op::Exp: call("exp"); break;
    case Op::Log: call("log"); break;
    case Op::PowSgn: call("powsgn"); break;
  }
}

std::string Expression::to_string() const {
  std::string out;
  if (root_ >= 0) print_node(root_, out);
  return out;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.root_ < 0 || b.root_ < 0) return a.root_ == b.root_;
  std::function<bool(int, int)> same = [&](int i, int j) -> bool {
    if ((i < 0) != (j < 0)) return false;
    if (i < 0) return true;
    const Node& x = a.nodes_[static_cast<std::size_t>(i)];
    const Node& y = b.nodes_[static_cast<std::size_t>(j)];
    if (x.op != y.op) return false;
    switch (x.op) {
      case Op::Constant: return x.value == y.value;
      case Op::Variable: return true;
      case Op::Coefficient: return x.name == y.name && x.slot == y.slot;
      case Op::Parameter: return x.name == y.name && x.value == y.value;
      default: return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
    }
  };
  return same(a.root_, b.root_);
}

}  // namespace graphpde::expr
