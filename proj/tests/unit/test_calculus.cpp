#include <gtest/gtest.h>

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include <graphpde/calculus.hpp>
#include <graphpde/oracle.hpp>
#include <graphpde/random_instance.hpp>

#include "fixtures.hpp"

using namespace graphpde;
using namespace graphpde::calculus;
using graphpde::testing::path_graph;
using graphpde::testing::path3_domain;

namespace {

Domain whole_path(int n) {
  std::vector<VertexId> all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  return Domain(path_graph(n), all);
}

std::vector<double> random_field(std::mt19937_64& rng, const Domain& d) {
  std::vector<double> u(d.graph().vertex_count(), 0.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (Index x : d.omega()) u[x] = unif(rng);
  return u;
}

}  // namespace

TEST(Laplacian, PathValues) {
  const OperatorContext ctx(whole_path(4));
  const VertexFunction u{{0, 0.0}, {1, 1.0}, {2, 4.0}, {3, 9.0}};
  EXPECT_DOUBLE_EQ(laplacian(ctx, u, 1), 1.0);
  EXPECT_DOUBLE_EQ(laplacian(ctx, u, 0), 1.0);
  const VertexFunction c{{0, 2.0}, {1, 2.0}, {2, 2.0}, {3, 2.0}};
  for (VertexId x = 0; x < 4; ++x) EXPECT_EQ(laplacian(ctx, c, x), 0.0);
}

TEST(GradientForm, PathValues) {
  const OperatorContext ctx(whole_path(3));
  const VertexFunction u{{0, 0.0}, {1, 1.0}, {2, 4.0}};
  EXPECT_DOUBLE_EQ(gradient_form(ctx, u, u, 1), 2.5);
  EXPECT_NEAR(slope(ctx, u, 1), 1.5811388, 1e-7);
  const VertexFunction c{{0, 3.0}, {1, 3.0}, {2, 3.0}};
  EXPECT_EQ(gradient_form(ctx, u, c, 1), 0.0);
  EXPECT_EQ(slope(ctx, c, 0), 0.0);

  std::mt19937_64 rng(4);
  const Domain d = whole_path(3);
  for (int k = 0; k < 20; ++k) {
    const auto a = d.from_field(random_field(rng, d));
    const auto b = d.from_field(random_field(rng, d));
    for (VertexId x = 0; x < 3; ++x) EXPECT_DOUBLE_EQ(gradient_form(ctx, a, b, x), gradient_form(ctx, b, a, x));
  }
}

TEST(Slope, ZeroExtension) {
  const OperatorContext ctx(path3_domain());
  const VertexFunction u{{0, 1.0}, {1, 0.0}};
  EXPECT_NEAR(slope(ctx, u, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(slope(ctx, u, 1), 0.5, 1e-15);
}

TEST(MSlope, Orders) {
  const OperatorContext ctx(whole_path(4));
  const VertexFunction u{{0, 0.0}, {1, 1.0}, {2, 4.0}, {3, 9.0}};
  EXPECT_DOUBLE_EQ(m_slope(ctx, u, 2, 1), 1.0);
  for (VertexId x = 0; x < 4; ++x) EXPECT_DOUBLE_EQ(m_slope(ctx, u, 1, x), slope(ctx, u, x));
  const VertexFunction c{{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}};
  for (int m = 1; m <= 4; ++m) EXPECT_EQ(m_slope(ctx, c, m, 2), 0.0);
}

TEST(PLaplacian, HandValueAndReduction) {
  const OperatorContext ctx(path3_domain());
  const VertexFunction u{{0, 1.0}, {1, 0.0}};
  const double expected = -(0.25 + 1.0 / (2.0 * std::sqrt(2.0)));
  EXPECT_NEAR(p_laplacian(ctx, u, 3.0, 0), expected, 1e-15);
  EXPECT_NEAR(expected, -0.6035534, 1e-7);

  std::mt19937_64 rng(9);
  const auto inst = random_instance(17, {}, ProblemKind::SemilinearDirichlet);
  const OperatorContext rctx(inst.domain);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_field(rng, inst.domain);
    for (Index x : inst.domain.interior()) {
      EXPECT_TRUE(graphpde::testing::close_rel(p_laplacian_at(rctx, f, 2.0, x),
                                               laplacian_at<double>(rctx, f, x), 1e-12));
    }
  }
}

TEST(PLaplacian, InteriorOnly) {
  const OperatorContext ctx(path3_domain());
  const VertexFunction u{{0, 1.0}, {1, 0.0}};
  EXPECT_THROW(p_laplacian(ctx, u, 3.0, 1), Error);
}

TEST(MpBilinear, Values) {
  const OperatorContext ctx(path3_domain());
  const VertexFunction u{{0, 1.0}, {1, 0.0}};
  const VertexFunction zero{{0, 0.0}, {1, 0.0}};
  EXPECT_DOUBLE_EQ(mp_bilinear(ctx, u, u, 1, 2.0), 1.0);
  EXPECT_EQ(mp_bilinear(ctx, u, zero, 1, 3.0), 0.0);

  std::mt19937_64 rng(2);
  const Domain d = path3_domain();
  for (int k = 0; k < 50; ++k) {
    const auto a = d.from_field(random_field(rng, d));
    const auto b = d.from_field(random_field(rng, d));
    EXPECT_TRUE(graphpde::testing::close_rel(mp_bilinear(ctx, a, b, 1, 2.0),
                                             mp_bilinear(ctx, b, a, 1, 2.0), 1e-12));
  }
}

TEST(MpLaplacian, MatchesPLaplacianAndOracle) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    const auto inst = random_instance(100 + k, {}, ProblemKind::SemilinearDirichlet);
    const OperatorContext ctx(inst.domain);
    const auto u = random_field(rng, inst.domain);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      for (Index x : inst.domain.interior()) {
        const double mine = mp_laplacian_field(ctx, u, 1, p, x).value;
        EXPECT_TRUE(graphpde::testing::close_rel(mine, -p_laplacian_at(ctx, u, p, x), 1e-10));
        EXPECT_TRUE(graphpde::testing::close_rel(mine, oracle_mp_laplacian_field(ctx, u, 1, p, x), 1e-11));
      }
    }
  }
  const OperatorContext ctx(path3_domain());
  EXPECT_EQ(mp_laplacian(ctx, VertexFunction{{0, 0.0}, {1, 0.0}}, 2, 3.0, 0).value, 0.0);
}

TEST(Norms, Values) {
  const auto g = path_graph(3);
  const std::vector<VertexId> omega{0, 1};
  EXPECT_DOUBLE_EQ(lp_norm(*g, omega, VertexFunction{{0, 1.0}, {1, 1.0}}, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(lp_norm(*g, omega, VertexFunction{{0, 2.0}, {1, -5.0}}, kInfinity), 5.0);
  EXPECT_EQ(lp_norm(*g, omega, VertexFunction{{0, 0.0}, {1, 0.0}}, 2.0), 0.0);

  const OperatorContext ctx(path3_domain());
  for (double t : {-2.0, 0.5, 3.0}) {
    EXPECT_NEAR(sobolev0_norm(ctx, VertexFunction{{0, t}, {1, 0.0}}, 1, 2.0), std::abs(t), 1e-15);
  }
  std::mt19937_64 rng(8);
  const Domain d = path3_domain();
  for (int k = 0; k < 20; ++k) {
    const auto u = d.from_field(random_field(rng, d));
    EXPECT_GE(sobolev_norm(ctx, u, 2, 3.0), sobolev0_norm(ctx, u, 2, 3.0));
  }
}

TEST(IntegrationByParts, ExactOnRationals) {
  using Q = boost::multiprecision::cpp_rational;
  const std::vector<RawEdge> edges{{0, 1, 1}, {1, 2, 2}, {2, 3, 0.5}, {3, 4, 1}, {1, 3, 3}, {4, 5, 1.5}};
  const auto g = std::make_shared<const WeightedGraph>(WeightedGraph::from_edges(edges));
  const std::vector<VertexId> omega{0, 1, 2, 3, 4};
  const Domain d(g, omega);
  const OperatorContext ctx(d);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Q> u(g->vertex_count(), Q(0)), phi(g->vertex_count(), Q(0));
    for (Index x : d.omega()) u[x] = Q(num(rng), 1 + std::abs(num(rng)));
    for (Index x : d.interior()) phi[x] = Q(num(rng), 3);
    Q lhs(0), rhs(0);
    for (Index x : d.omega()) {
      lhs += gradient_form_at<Q>(ctx, u, phi, x) * Q(g->measure(x));
    }
    for (Index x : d.omega()) rhs -= laplacian_at<Q>(ctx, u, x) * phi[x] * Q(g->measure(x));
    EXPECT_EQ(lhs, rhs);
  }
}
