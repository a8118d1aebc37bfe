#include <gtest/gtest.h>

#include <cmath>

#include <graphpde/calculus.hpp>
#include <graphpde/random_instance.hpp>
#include <graphpde/solvers.hpp>

#include "fixtures.hpp"

using namespace graphpde;
using graphpde::testing::bisect;
using graphpde::testing::path3_domain;

namespace {

const std::vector<VertexId> kOmega{0, 1};
const std::vector<VertexId> kInterior{0};
const std::vector<VertexId> kBoundary{1};

VertexFunction on_omega(double v) { return VertexFunction::constant(kOmega, v); }
VertexFunction source(double v) { return VertexFunction{{0, v}}; }
VertexFunction zero_h() { return VertexFunction{{1, 0.0}}; }

Nonlinearity power_g(const Domain& d, double c, double r) {
  return Nonlinearity::power(d.graph(), on_omega(0.0), on_omega(c), r, +1.0);
}

}  // namespace

TEST(YamabeMP, PathHandSolution) {
  for (double lambda : {0.1, 0.25, 0.3}) {
    const auto s = make_yamabe_mp(path3_domain(), 1, 2.0, 1.0, lambda, on_omega(1.0), on_omega(1.0));
    const auto r = solve(s);
    ASSERT_EQ(r.status, SolveStatus::Converged) << r.message;
    EXPECT_NEAR(r.solution.at(0), lambda / (1.0 + lambda), 1e-9);
    EXPECT_EQ(r.solution.at(1), 0.0);
    EXPECT_LE(r.residual_inf, 1e-8);
    EXPECT_TRUE(r.interior_flag);
    EXPECT_NEAR(r.Lambda, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.sobolev_C, 1.0, 1e-9);
  }
}

TEST(YamabeMP, ZeroNonlinearity) {
  auto s = make_yamabe_mp(path3_domain(), 1, 2.0, 1.0, 0.2, on_omega(0.0), on_omega(0.0));
  const auto r = solve(s);
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.residual_inf, 0.0);
  EXPECT_EQ(r.solution_inf, 0.0);
}

TEST(YamabeMP, RandomInstancesBelowThreshold) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto s = random_instance(seed, {}, ProblemKind::YamabeMP);
    const auto r = solve(s);
    EXPECT_EQ(r.status, SolveStatus::Converged) << seed << ": " << r.message;
    EXPECT_TRUE(r.interior_flag);
    EXPECT_LE(r.residual_inf, 1e-8);
    for (double v : r.energy_trace) EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(YamabeMP, HypothesisChecks) {
  auto s = make_yamabe_mp(path3_domain(), 1, 2.0, 0.5, 0.2, on_omega(1.0), on_omega(1.0));
  EXPECT_EQ(solve(s).status, SolveStatus::HypothesisViolated);
  s = make_yamabe_mp(path3_domain(), 1, 2.0, 1.0, -0.2, on_omega(1.0), on_omega(1.0));
  EXPECT_EQ(solve(s).status, SolveStatus::HypothesisViolated);
}

TEST(Dirichlet, LinearAndCubic) {
  const Domain d = path3_domain();
  auto r = solve(make_semilinear_dirichlet(d, 2.0, power_g(d, 1.0, 1.0), source(1.0), zero_h()));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 0.5, 1e-9);

  r = solve(make_semilinear_dirichlet(d, 2.0, power_g(d, 1.0, 3.0), source(2.0), zero_h()));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 1.0, 1e-9);

  r = solve(make_semilinear_dirichlet(d, 2.0, power_g(d, 1.0, 3.0), source(0.0), zero_h()));
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 0.0, 1e-12);
}

TEST(Dirichlet, BoundaryDataAreExact) {
  const Domain d = path3_domain();
  const auto r = solve(make_semilinear_dirichlet(d, 3.0, power_g(d, 1.0, 1.0), source(0.3),
                                                 VertexFunction{{1, 0.7}}));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.solution.at(1), 0.7);
  EXPECT_LE(dirichlet_residual(d, r.solution, 3.0, power_g(d, 1.0, 1.0), source(0.3)), 1e-8);
}

TEST(Dirichlet, RejectsNonMonotoneAndPOne) {
  const Domain d = path3_domain();
  const auto bad = Nonlinearity::power(d.graph(), on_omega(0.0), on_omega(1.0), 1.0, -1.0);
  auto r = solve(make_semilinear_dirichlet(d, 2.0, bad, source(1.0), zero_h()));
  EXPECT_EQ(r.status, SolveStatus::HypothesisViolated);
  EXPECT_NE(r.message.find("NonMonotoneG"), std::string::npos);
  r = solve(make_semilinear_dirichlet(d, 1.0, power_g(d, 1.0, 1.0), source(1.0), zero_h()));
  EXPECT_EQ(r.status, SolveStatus::HypothesisViolated);
}

TEST(WellPosed, HandSolutions) {
  auto r = solve(make_yamabe_wellposed(path3_domain(), 2.0, 1.0, on_omega(1.0), on_omega(1.0)));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 0.5, 1e-9);
  EXPECT_LE(r.uniqueness_gap, 1e-6);

  r = solve(make_yamabe_wellposed(path3_domain(), 2.0, 1.0, on_omega(0.0), on_omega(1.0)));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 0.0, 1e-12);
}

TEST(WellPosed, PThreeAgainstBisection) {
  const auto r = solve(make_yamabe_wellposed(path3_domain(), 3.0, 2.0, VertexFunction{{0, 2.0}, {1, 0.0}},
                                             on_omega(0.0)));
  ASSERT_EQ(r.status, SolveStatus::Converged) << r.message;
  const double c = 0.25 + 1.0 / (2.0 * std::sqrt(2.0));
  const double t = bisect([&](double s) { return c * s * std::abs(s) - 2.0; }, 0.0, 10.0);
  EXPECT_NEAR(t, 1.8204, 1e-4);
  EXPECT_NEAR(r.solution.at(0), t, 1e-8);
}

TEST(KazdanWarner, HandSolutions) {
  const Domain d = path3_domain();
  auto r = solve(make_kazdan_warner(d, 2.0, on_omega(1.0), on_omega(1.0), source(1.0 + std::exp(1.0)), zero_h()));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 1.0, 1e-9);
  r = solve(make_kazdan_warner(d, 2.0, on_omega(1.0), on_omega(1.0), source(1.0), zero_h()));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 0.0, 1e-9);
}

TEST(KazdanWarner, AlphaZeroMatchesPlainDirichlet) {
  const auto inst = random_instance(31, {}, ProblemKind::KazdanWarner);
  const auto zeros = VertexFunction::constant(inst.domain.omega_ids(), 0.0);
  const auto kw = solve(make_kazdan_warner(inst.domain, 2.5, zeros, inst.beta, inst.f, inst.h));
  const auto plain = solve(make_semilinear_dirichlet(inst.domain, 2.5, Nonlinearity{}, inst.f, inst.h));
  ASSERT_EQ(kw.status, SolveStatus::Converged);
  ASSERT_EQ(plain.status, SolveStatus::Converged);
  for (VertexId x : inst.domain.omega_ids()) EXPECT_NEAR(kw.solution.at(x), plain.solution.at(x), 1e-8);
}

TEST(SmallData, CubicFixtures) {
  const Domain d = path3_domain();
  auto r = solve(make_small_data(d, power_g(d, 1.0, 3.0), source(0.0)));
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_EQ(r.iterations, 0);

  r = solve(make_small_data(d, power_g(d, 1.0, 3.0), source(2.0)));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution.at(0), 1.0, 1e-10);

  r = solve(make_small_data(d, power_g(d, 1.0, 3.0), source(0.1)));
  ASSERT_EQ(r.status, SolveStatus::Converged);
  const double root = bisect([](double t) { return t + t * t * t - 0.1; }, 0.0, 1.0);
  EXPECT_NEAR(r.solution.at(0), root, 1e-10);
  EXPECT_LE(r.iterations, 5);
  for (std::size_t i = 1; i < r.residual_ratios.size(); ++i) {
    EXPECT_LT(r.residual_ratios[i], r.residual_ratios[i - 1]);
  }
}

TEST(SmallData, RequiresFlatG) {
  const Domain d = path3_domain();
  const auto r = solve(make_small_data(d, power_g(d, 1.0, 1.0), source(0.1)));
  EXPECT_EQ(r.status, SolveStatus::HypothesisViolated);
}

TEST(Replay, ConvergedReportsSatisfyTheEquation) {
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const auto s = random_instance(seed, {}, ProblemKind::SemilinearDirichlet);
    const auto r = solve(s);
    ASSERT_EQ(r.status, SolveStatus::Converged) << r.message;
    EXPECT_LE(dirichlet_residual(s.domain, r.solution, s.p, s.nonlinearity, s.f), 1e-8);
    for (VertexId x : s.domain.boundary_ids()) EXPECT_NEAR(r.solution.at(x), s.h.at(x), 1e-12);
    for (std::size_t i = 1; i < r.energy_trace.size(); ++i) {
      EXPECT_LE(r.energy_trace[i], r.energy_trace[i - 1] + 1e-12 * (1 + std::abs(r.energy_trace[i - 1])));
    }
  }
}
