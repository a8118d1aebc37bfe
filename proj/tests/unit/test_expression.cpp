#include <gtest/gtest.h>

#include <cmath>

#include <graphpde/error.hpp>
#include <graphpde/expression.hpp>
#include <graphpde/quadrature.hpp>

#include "fixtures.hpp"
#include "random_expression.hpp"

using namespace graphpde;
using namespace graphpde::expr;

namespace {

SymbolTable yamabe_symbols() {
  SymbolTable s;
  s.add_coefficient("a");
  s.add_coefficient("b");
  s.add_parameter("q", 1.0);
  return s;
}

ErrorCode code_of(std::string_view src, const SymbolTable& s) {
  try {
    Expression::parse(src, s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Expression, YamabeNonlinearity) {
  const auto s = yamabe_symbols();
  const auto e = Expression::parse("a - b*powsgn(t, q)", s);
  const std::vector<double> ab{1.0, 1.0};
  EXPECT_DOUBLE_EQ(e.value(2.0, ab), -1.0);
  EXPECT_DOUBLE_EQ(e.derivative(2.0, ab), -1.0);
}

TEST(Expression, IdentityAndExp) {
  const SymbolTable s;
  const auto id = Expression::parse("t", s);
  for (double t : {-3.0, 0.0, 2.5}) EXPECT_EQ(id.derivative(t, {}), 1.0);
  const auto ex = Expression::parse("exp(2*t)", s);
  EXPECT_DOUBLE_EQ(ex.derivative(0.0, {}), 2.0);
  EXPECT_NEAR(graphpde::testing::central_difference([&](double t) { return ex.value(t, {}); }, 0.0),
              2.0, 1e-8);
}

TEST(Expression, Precedence) {
  const SymbolTable s;
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2", s).value(0, {}), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-2^2", s).value(0, {}), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("1 - 2 - 3", s).value(0, {}), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("8 / 4 / 2", s).value(0, {}), 1.0);
  EXPECT_DOUBLE_EQ(Expression::parse("1 + 2 * 3", s).value(0, {}), 7.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^-1", s).value(0, {}), 0.5);
  EXPECT_DOUBLE_EQ(Expression::parse("1.5e1 * t", s).value(2.0, {}), 30.0);
}

TEST(Expression, KinkConventions) {
  const SymbolTable s;
  EXPECT_EQ(Expression::parse("abs(t)", s).derivative(0.0, {}), 0.0);
  EXPECT_EQ(Expression::parse("sgn(t)", s).derivative(0.5, {}), 0.0);
  EXPECT_EQ(Expression::parse("sgn(0)", s).value(0.0, {}), 0.0);
  EXPECT_EQ(Expression::parse("powsgn(t, 3)", s).derivative(0.0, {}), 0.0);
  EXPECT_EQ(Expression::parse("powsgn(t, 1)", s).derivative(0.0, {}), 1.0);
  EXPECT_DOUBLE_EQ(Expression::parse("powsgn(t, 2)", s).value(-3.0, {}), -9.0);
}

TEST(Expression, Errors) {
  const auto s = yamabe_symbols();
  EXPECT_EQ(code_of("a +", s), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of("(t", s), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of("t t", s), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of("zz * t", s), ErrorCode::UnknownIdentifier);
  EXPECT_EQ(code_of("foo(t)", s), ErrorCode::UnknownIdentifier);
  try {
    Expression::parse("t +\n  # ", s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("2:"), std::string::npos) << e.what();
  }
}

TEST(Expression, EvalErrors) {
  const SymbolTable s;
  EXPECT_THROW(Expression::parse("log(t)", s).value(-1.0, {}), Error);
  EXPECT_THROW(Expression::parse("log(t)", s).value(0.0, {}), Error);
  EXPECT_THROW(Expression::parse("t^-1", s).value(0.0, {}), Error);
  EXPECT_THROW(Expression::parse("1/t", s).value(0.0, {}), Error);
  EXPECT_THROW(Expression::parse("t^0.5", s).value(-2.0, {}), Error);
  EXPECT_NO_THROW(Expression::parse("t^2", s).value(-2.0, {}));
}

TEST(Expression, RoundTrip) {
  std::mt19937_64 rng(77);
  graphpde::testing::RandomExpression gen(rng, false);
  SymbolTable s;
  s.add_parameter("q", 2.0);
  for (int k = 0; k < 500; ++k) {
    const Expression e = gen.draw(5);
    const Expression back = Expression::parse(e.to_string(), s);
    ASSERT_TRUE(back == e) << e.to_string() << " vs " << back.to_string();
    EXPECT_EQ(back.to_string(), e.to_string());
  }
}

TEST(Expression, DerivativeMatchesCentralDifference) {
  std::mt19937_64 rng(78);
  graphpde::testing::RandomExpression gen(rng, true);
  std::uniform_real_distribution<double> ts(-2.0, 2.0);
  int checked = 0;
  while (checked < 500) {
    const Expression e = gen.draw(4);
    const double t = ts(rng);
    const double d = e.derivative(t, {});
    const double fd = graphpde::testing::central_difference([&](double s) { return e.value(s, {}); }, t);
    EXPECT_TRUE(graphpde::testing::close_rel(d, fd, 1e-6)) << e.to_string() << " at " << t;
    ++checked;
  }
}

TEST(Quadrature, Polynomials) {
  using graphpde::quad::adaptive_simpson;
  EXPECT_NEAR(adaptive_simpson([](double t) { return t * t; }, 0.0, 3.0), 9.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::exp(t); }, 0.0, 1.0), std::exp(1.0) - 1.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double t) { return t; }, 2.0, 0.0), -2.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::abs(t); }, -1.0, 2.0), 2.5, 1e-12);
  EXPECT_THROW(adaptive_simpson([](double) { return std::nan(""); }, 0.0, 1.0), Error);
}
