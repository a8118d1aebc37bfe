#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <graphpde/graph.hpp>
#include <graphpde/nonlinearity.hpp>

namespace graphpde {

enum class ProblemKind {
  YamabeMP,             // L_{m,p} u = lambda f(x, u), vanishing boundary slopes
  SemilinearDirichlet,  // -Delta_p u + g(x, u) = f in the interior, u = h on the boundary
  YamabeWellPosed,      // -Delta_p u + b |u|^{q-1} u = a, u = 0 on the boundary
  KazdanWarner,         // -Delta_p u + alpha e^{beta u} = f, u = h on the boundary
  SmallDataLaplace,     // -Delta u + g(x, u) = f, u = 0 on the boundary
};

std::string_view to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view name);

struct SolverOptions {
  double gradient_tol = 1e-10;
  double residual_tol = 1e-8;
  double boundary_tol = 1e-12;
  double newton_tol = 1e-12;
  int newton_max_iterations = 50;
  int max_iterations = 0;  // descent iterations; 0 means 500 * dim
  int random_starts = 8;
  double uniqueness_tol = 1e-6;
  double monotone_range = 10.0;
  int monotone_points = 2048;
};

/// One semilinear problem. Which fields matter depends on the kind:
///   YamabeMP            m, p, q, lambda, nonlinearity (f), a, b
///   SemilinearDirichlet p, nonlinearity (g), f, h
///   YamabeWellPosed     p, q, a, b
///   KazdanWarner        p, alpha, beta, f, h
///   SmallDataLaplace    nonlinearity (g), f
/// Unset source terms and boundary data are zero.
struct ProblemSpec {
  explicit ProblemSpec(Domain d, ProblemKind k = ProblemKind::SemilinearDirichlet)
      : domain(std::move(d)), kind(k) {}

  Domain domain;
  ProblemKind kind;
  int m = 1;
  double p = 2.0;
  double q = 1.0;
  double lambda = 0.0;
  Nonlinearity nonlinearity;
  VertexFunction a, b, f, alpha, beta, h;
  SolverOptions options;
  std::uint64_t seed = 0;
};

enum class SolveStatus {
  Converged,
  BoundaryTouching,
  Diverged,
  MaxIterations,
  HypothesisViolated,
  UniquenessWitnessFailed,
  SingularJacobian,
};

std::string_view to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::Diverged;
  std::string message;
  VertexFunction solution;
  double residual_inf = std::numeric_limits<double>::infinity();
  bool boundary_ok = false;
  int iterations = 0;
  double energy_final = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> energy_trace;

  // Existence pipeline diagnostics.
  bool interior_flag = false;
  double lambda_used = std::numeric_limits<double>::quiet_NaN();
  double Lambda = std::numeric_limits<double>::quiet_NaN();
  double rho_used = std::numeric_limits<double>::quiet_NaN();
  double sobolev_C = std::numeric_limits<double>::quiet_NaN();
  bool theorem_guarantee = false;
  double solution_inf = 0.0;

  // Uniqueness witness (max distance between independent solves).
  double uniqueness_gap = std::numeric_limits<double>::quiet_NaN();

  // Newton diagnostics.
  std::vector<double> residual_history;
  std::vector<double> residual_ratios;
};

}  // namespace graphpde
