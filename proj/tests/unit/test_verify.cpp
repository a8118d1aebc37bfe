#include <gtest/gtest.h>

#include <graphpde/random_instance.hpp>
#include <graphpde/solvers.hpp>
#include <graphpde/verify.hpp>
#include <graphpde/verify_suite.hpp>

#include "fixtures.hpp"

using namespace graphpde;
using graphpde::testing::path3_domain;

namespace {

const std::vector<VertexId> kOmega{0, 1};

VertexFunction solve_linear(const Domain& d, double f0) {
  const auto g = Nonlinearity::power(d.graph(), VertexFunction::constant(kOmega, 0.0),
                                     VertexFunction::constant(kOmega, 1.0), 1.0, +1.0);
  const auto r = solve(make_semilinear_dirichlet(d, 2.0, g, VertexFunction{{0, f0}}, VertexFunction{{1, 0.0}}));
  EXPECT_EQ(r.status, SolveStatus::Converged);
  return r.solution;
}

}  // namespace

TEST(MonotoneH, Construction) {
  const auto h = MonotoneH::from_breakpoints({{-1.0, -2.0}, {0.0, 0.0}, {2.0, 1.0}});
  EXPECT_EQ(h(0.0), 0.0);
  EXPECT_DOUBLE_EQ(h(1.0), 0.5);
  EXPECT_DOUBLE_EQ(h(5.0), 1.0);
  EXPECT_DOUBLE_EQ(h(-5.0), -2.0);
  EXPECT_THROW(MonotoneH::from_breakpoints({{-1.0, 1.0}, {0.0, 0.0}}), Error);
  EXPECT_THROW(MonotoneH::from_breakpoints({{0.0, 1.0}, {1.0, 2.0}}), Error);

  const auto hn = MonotoneH::truncation(1.0, 4);
  EXPECT_EQ(hn(0.75), 0.0);
  EXPECT_DOUBLE_EQ(hn(0.875), 0.5);
  EXPECT_EQ(hn(1.0), 1.0);
  EXPECT_EQ(hn(3.0), 1.0);
  EXPECT_THROW(MonotoneH::truncation(0.25, 2), Error);
}

TEST(Oscillation, HandInstance) {
  const Domain d = path3_domain();
  const auto u1 = solve_linear(d, 1.0);
  const auto u2 = solve_linear(d, 3.0);
  const auto g = Nonlinearity::power(d.graph(), VertexFunction::constant(kOmega, 0.0),
                                     VertexFunction::constant(kOmega, 1.0), 1.0, +1.0);
  const auto c = check_oscillation(d, g, u1, u2, VertexFunction{{0, 1.0}}, VertexFunction{{0, 3.0}}, 2.0);
  EXPECT_TRUE(c.passed);
  EXPECT_NEAR(c.lhs, 1.0, 1e-9);
  EXPECT_NEAR(c.rhs, 2.0, 1e-9);
  const auto same = check_oscillation(d, g, u1, u1, VertexFunction{{0, 1.0}}, VertexFunction{{0, 1.0}}, 2.0);
  EXPECT_EQ(same.lhs, 0.0);
  EXPECT_EQ(same.slack, 0.0);
}

TEST(Oscillation, RejectsNonSolutions) {
  const Domain d = path3_domain();
  const auto g = Nonlinearity::power(d.graph(), VertexFunction::constant(kOmega, 0.0),
                                     VertexFunction::constant(kOmega, 1.0), 1.0, +1.0);
  const VertexFunction wrong{{0, 0.4}, {1, 0.0}};
  try {
    check_oscillation(d, g, wrong, wrong, VertexFunction{{0, 1.0}}, VertexFunction{{0, 1.0}}, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotASolution);
  }
}

TEST(HInequality, IdentityAndTruncation) {
  const Domain d = path3_domain();
  const auto r = solve(make_semilinear_dirichlet(d, 3.0, Nonlinearity{}, VertexFunction{{0, 2.0}},
                                                 VertexFunction{{1, 0.0}}));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  const auto id = MonotoneH::from_breakpoints({{-100.0, -100.0}, {0.0, 0.0}, {100.0, 100.0}});
  const auto c = check_h_inequality(d, r.solution, VertexFunction{{0, 2.0}}, id, 3.0);
  EXPECT_TRUE(c.passed);
  EXPECT_GT(c.rhs, 0.0);
  const auto above = check_h_inequality(d, r.solution, VertexFunction{{0, 2.0}},
                                        MonotoneH::truncation(10.0, 8), 3.0);
  EXPECT_EQ(above.rhs, 0.0);
  EXPECT_TRUE(above.passed);
}

TEST(SignInequality, EmptyLevelSetsAndSignStructure) {
  const Domain d = path3_domain();
  const VertexFunction f{{0, 2.0}};
  const auto r = solve(make_semilinear_dirichlet(d, 2.0, Nonlinearity{}, f, VertexFunction{{1, 0.0}}));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  for (const auto& c : check_sign_inequality(d, r.solution, f, 100.0, 2.0)) {
    EXPECT_TRUE(c.passed);
    EXPECT_EQ(c.rhs, 0.0);
  }
  const auto three = check_sign_inequality(d, r.solution, f, 0.5, 2.0);
  for (const auto& c : three) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_EQ(three[1].rhs, 0.0);
  EXPECT_DOUBLE_EQ(three[0].rhs, three[2].rhs);
}

TEST(SignInequality, NegativeSolutionLowerLevelSet) {
  // u(0) = -1 solves -Delta u = -1; the lower level set carries f = -1.
  const Domain d = path3_domain();
  const VertexFunction f{{0, -1.0}};
  const auto r = solve(make_semilinear_dirichlet(d, 2.0, Nonlinearity{}, f, VertexFunction{{1, 0.0}}));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), -1.0, 1e-9);
  const auto three = check_sign_inequality(d, r.solution, f, 0.5, 2.0);
  for (const auto& c : three) EXPECT_TRUE(c.passed) << c.name;
}

TEST(Suites, RandomInstancesPass) {
  for (Suite s : {Suite::Oscillation, Suite::H, Suite::Sign, Suite::Oracle}) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto inst = random_instance(instance_seed(3, i), {}, ProblemKind::SemilinearDirichlet);
      for (const auto& c : run_suite_instance(s, inst.domain, inst.p, instance_seed(4, i))) {
        EXPECT_TRUE(c.passed) << to_string(s) << " " << c.name << " " << c.context;
      }
    }
  }
}

TEST(RandomInstance, Deterministic) {
  for (ProblemKind k : {ProblemKind::YamabeMP, ProblemKind::SemilinearDirichlet, ProblemKind::KazdanWarner}) {
    const auto a = random_instance(99, {}, k);
    const auto b = random_instance(99, {}, k);
    EXPECT_EQ(a.domain.omega_ids(), b.domain.omega_ids());
    EXPECT_EQ(a.f, b.f);
    EXPECT_EQ(a.h, b.h);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.lambda, b.lambda);
    EXPECT_EQ(a.seed, b.seed);
  }
}

TEST(RandomInstance, DomainInvariants) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = random_instance(seed, {}, ProblemKind::SemilinearDirichlet);
    ASSERT_TRUE(s.domain.connected());
    ASSERT_FALSE(s.domain.interior().empty());
    ASSERT_FALSE(s.domain.boundary().empty());
    ASSERT_LE(s.domain.graph().vertex_count(), 10u);
    if (seed % 50 == 0) {
      EXPECT_TRUE(check_monotone(s.nonlinearity, s.domain.graph(), s.domain.omega()).monotone);
    }
  }
}
