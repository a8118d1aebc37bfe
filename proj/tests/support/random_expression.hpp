#pragma once

#include <random>

#include <graphpde/expression.hpp>

namespace graphpde::testing {

// Random trees of the shape the parser produces (constants are nonnegative;
// negation is an explicit node). `smooth` restricts to operators that are
// differentiable everywhere they are defined: no abs, sgn, division or log.
class RandomExpression {
 public:
  RandomExpression(std::mt19937_64& rng, bool smooth) : rng_(rng), smooth_(smooth) {}

  expr::Expression draw(int depth) {
    expr::Expression e;
    e.set_root(node(e, depth));
    return e;
  }

 private:
  int leaf(expr::Expression& e) {
    expr::Node n;
    switch (pick(smooth_ ? 2 : 3)) {
      case 0: n.op = expr::Op::Variable; break;
      case 1:
        n.op = expr::Op::Constant;
        n.value = std::uniform_real_distribution<double>(0.0, 3.0)(rng_);
        break;
      default:
        n.op = expr::Op::Parameter;
        n.name = "q";
        n.value = 2.0;
        break;
    }
    return e.add(n);
  }

  int node(expr::Expression& e, int depth) {
    if (depth == 0 || pick(4) == 0) return leaf(e);
    static const expr::Op smooth_ops[] = {expr::Op::Add, expr::Op::Sub, expr::Op::Mul,
                                          expr::Op::Neg, expr::Op::Exp, expr::Op::PowSgn};
    static const expr::Op all_ops[] = {expr::Op::Add, expr::Op::Sub, expr::Op::Mul, expr::Op::Div,
                                       expr::Op::Pow, expr::Op::Neg, expr::Op::Abs, expr::Op::Sgn,
                                       expr::Op::Exp, expr::Op::Log, expr::Op::PowSgn};
    expr::Node n;
    n.op = smooth_ ? smooth_ops[pick(6)] : all_ops[pick(11)];
    const bool unary = n.op == expr::Op::Neg || n.op == expr::Op::Abs || n.op == expr::Op::Sgn ||
                       n.op == expr::Op::Exp || n.op == expr::Op::Log;
    if (n.op == expr::Op::Exp && smooth_) {
      // keep exponentials tame: exp of a leaf
      n.lhs = leaf(e);
      return e.add(n);
    }
    n.lhs = node(e, depth - 1);
    if (n.op == expr::Op::PowSgn) {
      expr::Node q;
      q.op = expr::Op::Constant;
      q.value = 1.0 + pick(3);
      n.rhs = e.add(q);
    } else if (!unary) {
      n.rhs = node(e, depth - 1);
    }
    return e.add(n);
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937_64& rng_;
  bool smooth_;
};

}  // namespace graphpde::testing
