#pragma once

#include <optional>

#include <graphpde/problem.hpp>
#include <graphpde/variational.hpp>

namespace graphpde {

// ---------------------------------------------------------------------------
// Problem builders

ProblemSpec make_yamabe_mp(Domain d, int m, double p, double q, double lambda,
                           const VertexFunction& a, const VertexFunction& b);
ProblemSpec make_semilinear_dirichlet(Domain d, double p, Nonlinearity g, VertexFunction f,
                                      VertexFunction h = {});
ProblemSpec make_yamabe_wellposed(Domain d, double p, double q, VertexFunction a,
                                  VertexFunction b);
ProblemSpec make_kazdan_warner(Domain d, double p, VertexFunction alpha, VertexFunction beta,
                               VertexFunction f, VertexFunction h = {});
ProblemSpec make_small_data(Domain d, Nonlinearity g, VertexFunction f);

// ---------------------------------------------------------------------------
// Solvers

/// Dispatches on spec.kind.
SolveReport solve(const ProblemSpec& spec);

/// Existence pipeline: Sobolev constant (q = infinity), threshold, ball
/// minimization at rho = rho*, Euler-Lagrange residual check.
SolveReport solve_yamabe_mp(const ProblemSpec& spec);

/// Convex minimization of (1/p) int |nabla u|^p + int G(x, u) - int f u over
/// {u = h on the boundary}. `start` gives interior starting values (zero
/// when absent).
SolveReport solve_semilinear_dirichlet(const ProblemSpec& spec,
                                       const std::optional<VertexFunction>& start = std::nullopt);

/// g(x, t) = b(x) sgn(t)|t|^q, f = a, h = 0, plus a two-start uniqueness witness.
SolveReport solve_yamabe_wellposed(const ProblemSpec& spec,
                                   const std::optional<VertexFunction>& start = std::nullopt);

/// g(x, t) = alpha(x) e^{beta(x) t}, plus a two-start uniqueness witness.
SolveReport solve_kazdan_warner(const ProblemSpec& spec,
                                const std::optional<VertexFunction>& start = std::nullopt);

/// Newton iteration from u = 0 with a dense LU solve per step.
SolveReport solve_small_data_newton(const ProblemSpec& spec);

// ---------------------------------------------------------------------------
// Residuals and thresholds

/// max over the interior of |-Delta_p u + g(x, u) - f| (RestrictToOmega
/// sums). Valid for p >= 1; u must be defined on all of Omega.
double dirichlet_residual(const Domain& d, const VertexFunction& u, double p,
                          const Nonlinearity& g, const VertexFunction& f);

/// Euler-Lagrange residual of a Yamabe-type energy. For m = 1 this is
/// max_x |L_{1,p} u(x) - lambda f(x, u(x))| over the interior; for m >= 2 it
/// is max_j |E'(u)[e_j]| / int |e_j| dm over the admissible basis.
double yamabe_residual(const EnergyFunctional& ef, std::span<const double> field);

struct YamabeThreshold {
  bool available = false;  // false when ||a||_1 or ||b||_1 vanishes
  double C = 0.0;
  double normA = 0.0;
  double normB = 0.0;
  Threshold threshold;
};

/// Sobolev constant for q = infinity and the threshold of a YamabeMP spec.
YamabeThreshold yamabe_threshold(const ProblemSpec& spec);

/// Interior starting values drawn from N(0, scale^2).
VertexFunction random_interior_start(const Domain& d, std::uint64_t seed, double scale = 1.0);

}  // namespace graphpde
