#include <graphpde/verify_suite.hpp>

#include <algorithm>
#include <cmath>

#include <graphpde/expression.hpp>
#include <graphpde/oracle.hpp>
#include <graphpde/random_instance.hpp>
#include <graphpde/solvers.hpp>

namespace graphpde {

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Oscillation: return "oscillation";
    case Suite::H: return "h";
    case Suite::Sign: return "sign";
    case Suite::Oracle: return "oracle";
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::Oscillation, Suite::H, Suite::Sign, Suite::Oracle}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 of the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

CheckResult solve_failure(const SolveReport& r, const std::string& context) {
  CheckResult c;
  c.name = "solve";
  c.passed = false;
  c.lhs = r.residual_inf;
  c.slack = -r.residual_inf;
  c.context = context + ": " + std::string(to_string(r.status)) + " " + r.message;
  return c;
}

double sup_norm(const VertexFunction& u) {
  double s = 0.0;
  for (double v : u.values()) s = std::max(s, std::abs(v));
  return s;
}

std::vector<CheckResult> oscillation(const Domain& d, double p, std::mt19937_64& rng) {
  InstanceBounds bounds;
  bounds.p_choices = {p};
  const ProblemSpec s1 = random_data(rng, d, ProblemKind::SemilinearDirichlet, bounds);
  ProblemSpec s2 = s1;
  s2.f = random_function(rng, d.interior_ids(), -2.0, 2.0);
  const auto r1 = solve(s1);
  if (r1.status != SolveStatus::Converged) return {solve_failure(r1, "u1")};
  const auto r2 = solve(s2);
  if (r2.status != SolveStatus::Converged) return {solve_failure(r2, "u2")};
  auto c = check_oscillation(d, s1.nonlinearity, r1.solution, r2.solution, s1.f, s2.f, p);
  c.context = s1.nonlinearity.describe();
  return {c};
}

struct Solved {
  VertexFunction u, f;
  std::optional<CheckResult> failure;
};

Solved poisson(const Domain& d, double p, std::mt19937_64& rng) {
  Solved out;
  out.f = random_function(rng, d.interior_ids(), -2.0, 2.0);
  const auto zero = VertexFunction::constant(d.boundary_ids(), 0.0);
  const auto r = solve(make_semilinear_dirichlet(d, p, Nonlinearity{}, out.f, zero));
  if (r.status != SolveStatus::Converged) {
    out.failure = solve_failure(r, "u");
  } else {
    out.u = r.solution;
  }
  return out;
}

std::vector<CheckResult> h_checks(const Domain& d, double p, std::mt19937_64& rng) {
  const Solved s = poisson(d, p, rng);
  if (s.failure) return {*s.failure};
  std::vector<CheckResult> out;
  const double range = std::max(1.0, sup_norm(s.u));
  for (int k = 0; k < 8; ++k) {
    auto c = check_h_inequality(d, s.u, s.f, random_monotone_h(rng, range), p);
    c.context = "random H #" + std::to_string(k);
    out.push_back(std::move(c));
  }
  const double M = sup_norm(s.u) > 0.0
                       ? std::uniform_real_distribution<double>(0.0, sup_norm(s.u))(rng)
                       : 1.0;
  for (int n : {2, 8, 32}) {
    if (n * M <= 1.0 || M <= 0.0) continue;
    auto c = check_h_inequality(d, s.u, s.f, MonotoneH::truncation(M, n), p);
    c.context = "H_n n=" + std::to_string(n);
    c.details["M"] = M;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> sign_checks(const Domain& d, double p, std::mt19937_64& rng) {
  const Solved s = poisson(d, p, rng);
  if (s.failure) return {*s.failure};
  const double top = sup_norm(s.u);
  // (0, top]: reflect the half-open draw [0, top).
  const double M = top > 0.0 ? top - std::uniform_real_distribution<double>(0.0, top)(rng) : 1.0;
  const auto three = check_sign_inequality(d, s.u, s.f, M, p);
  return {three.begin(), three.end()};
}

std::vector<CheckResult> oracle_checks(const Domain& d, std::mt19937_64& rng) {
  static const int orders[] = {1, 2, 3};
  static const double exponents[] = {1.5, 2.0, 3.0};
  const int m = orders[std::uniform_int_distribution<int>(0, 2)(rng)];
  const double p = exponents[std::uniform_int_distribution<int>(0, 2)(rng)];
  const calculus::OperatorContext ctx(d);
  std::vector<double> u(d.graph().vertex_count(), 0.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (Index x : d.omega()) u[x] = unif(rng);

  CheckResult c;
  c.name = "oracle_mp_laplacian";
  double scale = 1.0;
  for (Index x : d.interior()) {
    const double mine = calculus::mp_laplacian_field(ctx, u, m, p, x).value;
    const double ref = oracle_mp_laplacian_field(ctx, u, m, p, x);
    c.lhs = std::max(c.lhs, std::abs(mine - ref));
    scale = std::max({scale, std::abs(mine), std::abs(ref)});
    if (m == 1) {
      // m = 1 is -Delta_p.
      const double lap = -calculus::p_laplacian_at(ctx, u, p, x);
      c.details["max_p_laplacian_gap"] =
          std::max(c.details["max_p_laplacian_gap"], std::abs(mine - lap) / std::max(1.0, std::abs(lap)));
    }
  }
  c.rhs = 0.0;
  c.slack = c.rhs - c.lhs;
  c.tolerance = 1e-11 * scale;
  c.passed = c.slack >= -c.tolerance;
  if (m == 1) c.passed = c.passed && c.details["max_p_laplacian_gap"] <= 1e-10;
  c.details["m"] = m;
  c.details["p"] = p;
  c.context = "m=" + std::to_string(m) + " p=" + expr::format_double(p);
  return {c};
}

}  // namespace

std::vector<CheckResult> run_suite_instance(Suite suite, const Domain& d, double p,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (suite) {
    case Suite::Oscillation: return oscillation(d, p, rng);
    case Suite::H: return h_checks(d, p, rng);
    case Suite::Sign: return sign_checks(d, p, rng);
    case Suite::Oracle: return oracle_checks(d, rng);
  }
  return {};
}

}  // namespace graphpde
