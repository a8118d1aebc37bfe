#include <graphpde/solvers.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "optimize.hpp"

namespace graphpde {

using detail::Vec;

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::YamabeMP: return "YamabeMP";
    case ProblemKind::SemilinearDirichlet: return "SemilinearDirichlet";
    case ProblemKind::YamabeWellPosed: return "YamabeWellPosed";
    case ProblemKind::KazdanWarner: return "KazdanWarner";
    case ProblemKind::SmallDataLaplace: return "SmallDataLaplace";
  }
  return "Unknown";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) {
  for (auto k : {ProblemKind::YamabeMP, ProblemKind::SemilinearDirichlet,
                 ProblemKind::YamabeWellPosed, ProblemKind::KazdanWarner,
                 ProblemKind::SmallDataLaplace}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::BoundaryTouching: return "BoundaryTouching";
    case SolveStatus::Diverged: return "Diverged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::HypothesisViolated: return "HypothesisViolated";
    case SolveStatus::UniquenessWitnessFailed: return "UniquenessWitnessFailed";
    case SolveStatus::SingularJacobian: return "SingularJacobian";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------

ProblemSpec make_yamabe_mp(Domain d, int m, double p, double q, double lambda,
                           const VertexFunction& a, const VertexFunction& b) {
  ProblemSpec s(std::move(d));
  s.kind = ProblemKind::YamabeMP;
  s.m = m;
  s.p = p;
  s.q = q;
  s.lambda = lambda;
  s.nonlinearity = Nonlinearity::power(s.domain.graph(), a, b, q, -1.0);
  s.a = a;
  s.b = b;
  return s;
}

ProblemSpec make_semilinear_dirichlet(Domain d, double p, Nonlinearity g, VertexFunction f,
                                      VertexFunction h) {
  ProblemSpec s(std::move(d));
  s.kind = ProblemKind::SemilinearDirichlet;
  s.p = p;
  s.nonlinearity = std::move(g);
  s.f = std::move(f);
  s.h = std::move(h);
  return s;
}

ProblemSpec make_yamabe_wellposed(Domain d, double p, double q, VertexFunction a,
                                  VertexFunction b) {
  ProblemSpec s(std::move(d));
  s.kind = ProblemKind::YamabeWellPosed;
  s.p = p;
  s.q = q;
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

ProblemSpec make_kazdan_warner(Domain d, double p, VertexFunction alpha, VertexFunction beta,
                               VertexFunction f, VertexFunction h) {
  ProblemSpec s(std::move(d));
  s.kind = ProblemKind::KazdanWarner;
  s.p = p;
  s.alpha = std::move(alpha);
  s.beta = std::move(beta);
  s.f = std::move(f);
  s.h = std::move(h);
  return s;
}

ProblemSpec make_small_data(Domain d, Nonlinearity g, VertexFunction f) {
  ProblemSpec s(std::move(d));
  s.kind = ProblemKind::SmallDataLaplace;
  s.p = 2.0;
  s.nonlinearity = std::move(g);
  s.f = std::move(f);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

/// Value of an optional data function: zero when the function is empty.
double data_at(const VertexFunction& v, VertexId x) { return v.empty() ? 0.0 : v.at(x); }

SolveReport hypothesis_failure(std::string message) {
  SolveReport r;
  r.status = SolveStatus::HypothesisViolated;
  r.message = std::move(message);
  return r;
}

std::string vertex_message(const std::string& what, VertexId x) {
  return what + " at vertex " + std::to_string(x);
}

}  // namespace

double dirichlet_residual(const Domain& d, const VertexFunction& u, double p,
                          const Nonlinearity& g, const VertexFunction& f) {
  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::RestrictToOmega);
  const auto field = d.to_field(u);
  double worst = 0.0;
  for (Index x : d.interior()) {
    const VertexId id = d.graph().id(x);
    const double r = -calculus::p_laplacian_at(ctx, field, p, x) + g.value(x, field[x]) -
                     data_at(f, id);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double yamabe_residual(const EnergyFunctional& ef, std::span<const double> field) {
  const auto grad = ef.gradient(field);
  const WeightedGraph& g = ef.domain().graph();
  double worst = 0.0;
  if (ef.order() == 1) {
    for (Index x : ef.domain().interior()) worst = std::max(worst, std::abs(grad[x]) / g.measure(x));
    return worst;
  }
  const AdmissibleSpace& space = ef.space();
  for (std::size_t k = 0; k < space.dimension(); ++k) {
    const auto e = space.basis_vector(k);
    double pairing = 0.0;
    double mass = 0.0;
    for (Index x : ef.domain().omega()) {
      pairing += grad[x] * e[x];
      mass += std::abs(e[x]) * g.measure(x);
    }
    worst = std::max(worst, std::abs(pairing) / mass);
  }
  return worst;
}

VertexFunction random_interior_start(const Domain& d, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  VertexFunction u;
  for (Index x : d.interior()) u.set(d.graph().id(x), normal(rng));
  return u;
}

YamabeThreshold yamabe_threshold(const ProblemSpec& spec) {
  YamabeThreshold t;
  const WeightedGraph& g = spec.domain.graph();
  for (Index x : spec.domain.omega()) {
    const VertexId id = g.id(x);
    t.normA += std::abs(data_at(spec.a, id)) * g.measure(x);
    t.normB += std::abs(data_at(spec.b, id)) * g.measure(x);
  }
  t.C = sobolev_constant(spec.domain, spec.m, spec.p, calculus::kInfinity);
  if (t.normA > 0.0 && t.normB > 0.0) {
    t.threshold = threshold_Lambda(spec.p, spec.q, t.C, t.normA, t.normB);
    t.available = true;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Existence pipeline

SolveReport solve_yamabe_mp(const ProblemSpec& spec) {
  const Domain& d = spec.domain;
  d.require_solvable();
  const WeightedGraph& g = d.graph();
  if (spec.m < 1) return hypothesis_failure("order m must be a positive integer");
  if (!(spec.p > 1.0)) return hypothesis_failure("existence pipeline needs p > 1");
  if (spec.q < spec.p - 1.0 - 1e-12) return hypothesis_failure("existence pipeline needs q >= p - 1");
  if (!(spec.lambda > 0.0)) return hypothesis_failure("lambda must be positive");
  for (Index x : d.omega()) {
    const VertexId id = g.id(x);
    if (data_at(spec.a, id) < 0.0) return hypothesis_failure(vertex_message("a < 0", id));
    if (data_at(spec.b, id) < 0.0) return hypothesis_failure(vertex_message("b < 0", id));
  }
  if (growth_violation(spec.nonlinearity, d) > 0.0) {
    return hypothesis_failure("f violates the growth bound |f| <= a + b|t|^q");
  }

  SolveReport report;
  report.lambda_used = spec.lambda;
  const YamabeThreshold th = yamabe_threshold(spec);
  report.sobolev_C = th.C;
  double rho = 1.0;
  if (th.available) {
    report.Lambda = th.threshold.Lambda;
    report.theorem_guarantee = spec.lambda < th.threshold.Lambda;
    if (std::isfinite(th.threshold.rho_star)) {
      rho = th.threshold.rho_star;
    } else {
      for (int k = 0; k < 60; ++k, rho *= 2.0) {
        if (lambda_rho(rho, spec.p, spec.q, th.C, th.normA, th.normB) > spec.lambda) break;
      }
    }
  }

  const EnergyFunctional ef(d, spec.m, spec.p, spec.lambda, spec.nonlinearity);
  BallOptions ball;
  ball.random_starts = spec.options.random_starts;
  ball.seed = spec.seed;
  ball.grad_tol = spec.options.gradient_tol;
  ball.max_iterations = spec.options.max_iterations;

  BallMinimum best = minimize_on_ball(ef, rho, ball);
  if (!best.interior) {
    rho *= 2.0;
    best = minimize_on_ball(ef, rho, ball);
  }

  report.rho_used = rho;
  report.solution = best.u;
  report.interior_flag = best.interior;
  report.iterations = best.iterations;
  report.energy_final = best.energy;
  report.energy_trace = best.energy_trace;
  report.residual_inf = yamabe_residual(ef, best.field);
  report.boundary_ok = ef.space().constraint_violation(best.field) <= spec.options.boundary_tol;
  for (double v : best.u.values()) report.solution_inf = std::max(report.solution_inf, std::abs(v));

  bool f0_nonzero = false;
  for (Index x : d.omega()) f0_nonzero = f0_nonzero || spec.nonlinearity.value(x, 0.0) != 0.0;
  const bool nontrivial = !f0_nonzero || report.solution_inf > 0.0;

  if (!best.interior) {
    report.status = SolveStatus::BoundaryTouching;
    report.message = "ball minimizer lies on the sphere after retrying with 2 rho";
  } else if (report.residual_inf <= spec.options.residual_tol && report.boundary_ok && nontrivial) {
    report.status = SolveStatus::Converged;
  } else if (best.max_iterations_hit) {
    report.status = SolveStatus::MaxIterations;
    report.message = "descent iteration budget exhausted";
  } else {
    report.status = SolveStatus::Diverged;
    report.message = nontrivial ? "Euler-Lagrange residual above tolerance"
                                : "minimizer is trivial although f(., 0) does not vanish";
  }
  if (!report.theorem_guarantee && report.message.empty()) {
    report.message = th.available ? "lambda >= Lambda: existence is not guaranteed"
                                  : "threshold unavailable: ||a||_1 or ||b||_1 vanishes";
  }
  return report;
}

// ---------------------------------------------------------------------------
// Convex Dirichlet problems

namespace {

struct DirichletProblem {
  const Domain& d;
  double p;
  const Nonlinearity& g;
  const VertexFunction& f;
  const VertexFunction& h;
};

SolveReport check_dirichlet_hypotheses(const DirichletProblem& pr, const SolverOptions& options,
                                       bool require_g_zero) {
  pr.d.require_solvable();
  const WeightedGraph& g = pr.d.graph();
  if (!(pr.p >= 1.0)) return hypothesis_failure("p must be >= 1");
  if (pr.p == 1.0) {
    return hypothesis_failure("p = 1 is accepted for residual verification only; no solve path");
  }
  for (Index x : pr.d.interior()) {
    const VertexId id = g.id(x);
    if (!pr.f.empty()) pr.f.at(id);
    if (require_g_zero && std::abs(pr.g.value(x, 0.0)) > 1e-12) {
      return hypothesis_failure(vertex_message("g(x, 0) != 0", id));
    }
  }
  for (Index x : pr.d.boundary()) {
    if (!pr.h.empty()) pr.h.at(g.id(x));
  }
  const auto mono =
      check_monotone(pr.g, g, pr.d.interior(), options.monotone_range, options.monotone_points);
  if (!mono.monotone) {
    std::ostringstream os;
    os << "NonMonotoneG: dg/dt = " << expr::format_double(mono.min_derivative) << " at vertex "
       << mono.worst_vertex << ", t = " << expr::format_double(mono.worst_t);
    return hypothesis_failure(os.str());
  }
  SolveReport ok;
  ok.status = SolveStatus::Converged;
  return ok;
}

SolveReport dirichlet_descent(const DirichletProblem& pr, const SolverOptions& options,
                              const std::optional<VertexFunction>& start) {
  const Domain& d = pr.d;
  const WeightedGraph& g = d.graph();
  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::RestrictToOmega);
  const auto interior = d.interior();
  const std::size_t dim = interior.size();

  std::vector<double> base(g.vertex_count(), 0.0);
  for (Index x : d.boundary()) base[x] = data_at(pr.h, g.id(x));
  std::vector<double> source(g.vertex_count(), 0.0);
  for (Index x : interior) source[x] = data_at(pr.f, g.id(x));

  auto field = [&](const Vec& y) {
    std::vector<double> u = base;
    for (std::size_t i = 0; i < dim; ++i) u[interior[i]] = y[i];
    return u;
  };
  detail::Objective obj;
  obj.value = [&](const Vec& y) {
    const auto u = field(y);
    const double dirichlet = std::pow(calculus::sobolev0_norm_field(ctx, u, 1, pr.p), pr.p) / pr.p;
    double rest = 0.0;
    for (Index x : interior) rest += (pr.g.primitive(x, u[x]) - source[x] * u[x]) * g.measure(x);
    return dirichlet + rest;
  };
  obj.gradient = [&](const Vec& y) {
    const auto u = field(y);
    const auto dir = calculus::mp_bilinear_gradient(ctx, u, 1, pr.p);
    Vec out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const Index x = interior[i];
      out[i] = dir[x] + g.measure(x) * (pr.g.value(x, u[x]) - source[x]);
    }
    return out;
  };

  Vec y0(dim, 0.0);
  if (start) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (auto v = start->find(g.id(interior[i]))) y0[i] = *v;
    }
  }
  detail::MinimizeOptions opts;
  opts.grad_tol = options.gradient_tol;
  opts.max_iterations = options.max_iterations > 0 ? options.max_iterations
                                                   : static_cast<int>(500 * std::max<std::size_t>(dim, 1));

  SolveReport report;
  detail::MinimizeResult r;
  try {
    r = detail::minimize(obj, y0, opts);
  } catch (const Error& e) {
    report.status = SolveStatus::Diverged;
    report.message = e.what();
    return report;
  }
  const auto u = field(r.x);
  report.solution = d.from_field(u);
  report.iterations = r.iterations;
  report.energy_final = r.value;
  report.energy_trace = r.trace;
  for (double v : report.solution.values()) report.solution_inf = std::max(report.solution_inf, std::abs(v));
  report.residual_inf = dirichlet_residual(d, report.solution, pr.p, pr.g, pr.f);
  double bmax = 0.0;
  for (Index x : d.boundary()) bmax = std::max(bmax, std::abs(u[x] - data_at(pr.h, g.id(x))));
  report.boundary_ok = bmax <= options.boundary_tol;
  if (!std::isfinite(r.value) || !std::isfinite(report.residual_inf)) {
    report.status = SolveStatus::Diverged;
    report.message = "non-finite iterate";
  } else if (report.residual_inf <= options.residual_tol && report.boundary_ok) {
    report.status = SolveStatus::Converged;
  } else if (r.iterations >= opts.max_iterations) {
    report.status = SolveStatus::MaxIterations;
    report.message = "descent iteration budget exhausted";
  } else {
    report.status = SolveStatus::Diverged;
    report.message = "descent stalled above the residual tolerance";
  }
  return report;
}

double sup_distance(const VertexFunction& a, const VertexFunction& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.at(a.vertices()[i])));
  }
  return worst;
}

/// Re-solves from two seeded random starts and records the largest distance
/// to the primary solution.
void uniqueness_witness(const DirichletProblem& pr, const SolverOptions& options,
                        std::uint64_t seed, SolveReport& report) {
  if (report.status != SolveStatus::Converged) return;
  const double scale = 1.0 + report.solution_inf;
  double gap = 0.0;
  for (std::uint64_t k = 1; k <= 2; ++k) {
    const auto start = random_interior_start(pr.d, seed * 1000003ULL + k, scale);
    const SolveReport other = dirichlet_descent(pr, options, start);
    if (other.status != SolveStatus::Converged) {
      report.status = SolveStatus::UniquenessWitnessFailed;
      report.message = "restart did not converge: " + other.message;
      report.uniqueness_gap = std::numeric_limits<double>::infinity();
      return;
    }
    gap = std::max(gap, sup_distance(report.solution, other.solution));
  }
  report.uniqueness_gap = gap;
  if (gap > options.uniqueness_tol) {
    report.status = SolveStatus::UniquenessWitnessFailed;
    report.message = "independent starts disagree by " + expr::format_double(gap);
  }
}

}  // namespace

SolveReport solve_semilinear_dirichlet(const ProblemSpec& spec,
                                       const std::optional<VertexFunction>& start) {
  const DirichletProblem pr{spec.domain, spec.p, spec.nonlinearity, spec.f, spec.h};
  SolveReport check = check_dirichlet_hypotheses(pr, spec.options, true);
  if (check.status != SolveStatus::Converged) return check;
  return dirichlet_descent(pr, spec.options, start);
}

SolveReport solve_yamabe_wellposed(const ProblemSpec& spec,
                                   const std::optional<VertexFunction>& start) {
  const Domain& d = spec.domain;
  const WeightedGraph& g = d.graph();
  if (!(spec.p > 1.0)) return hypothesis_failure("well-posed Yamabe solve needs p > 1");
  if (spec.q < spec.p - 1.0 - 1e-12) return hypothesis_failure("needs q >= p - 1");
  for (Index x : d.interior()) {
    if (data_at(spec.b, g.id(x)) < 0.0) return hypothesis_failure(vertex_message("b < 0", g.id(x)));
  }
  VertexFunction b = spec.b;
  if (b.empty()) b = VertexFunction::constant(d.omega_ids(), 0.0);
  const Nonlinearity nl = Nonlinearity::power(g, VertexFunction::constant(d.omega_ids(), 0.0), b,
                                              spec.q, +1.0);
  const VertexFunction zero;
  const DirichletProblem pr{d, spec.p, nl, spec.a, zero};
  SolveReport check = check_dirichlet_hypotheses(pr, spec.options, true);
  if (check.status != SolveStatus::Converged) return check;
  SolveReport report = dirichlet_descent(pr, spec.options, start);
  uniqueness_witness(pr, spec.options, spec.seed, report);
  return report;
}

SolveReport solve_kazdan_warner(const ProblemSpec& spec,
                                const std::optional<VertexFunction>& start) {
  const Domain& d = spec.domain;
  const WeightedGraph& g = d.graph();
  for (Index x : d.interior()) {
    const VertexId id = g.id(x);
    if (spec.alpha.at(id) < 0.0) return hypothesis_failure(vertex_message("alpha < 0", id));
    if (spec.beta.at(id) < 0.0) return hypothesis_failure(vertex_message("beta < 0", id));
  }
  const Nonlinearity nl = Nonlinearity::exponential(g, spec.alpha, spec.beta);
  const DirichletProblem pr{d, spec.p, nl, spec.f, spec.h};
  SolveReport check = check_dirichlet_hypotheses(pr, spec.options, false);
  if (check.status != SolveStatus::Converged) return check;
  SolveReport report = dirichlet_descent(pr, spec.options, start);
  uniqueness_witness(pr, spec.options, spec.seed, report);
  return report;
}

// ---------------------------------------------------------------------------
// Newton for small data

SolveReport solve_small_data_newton(const ProblemSpec& spec) {
  const Domain& d = spec.domain;
  d.require_solvable();
  const WeightedGraph& g = d.graph();
  if (spec.p != 2.0) return hypothesis_failure("small-data Newton solve needs p = 2");
  for (Index x : d.interior()) {
    const double dg = spec.nonlinearity.derivative(x, 0.0);
    if (std::abs(dg) > 1e-12) {
      return hypothesis_failure(vertex_message("dg/dt(x, 0) != 0", g.id(x)));
    }
  }

  const auto interior = d.interior();
  const auto n = static_cast<Eigen::Index>(interior.size());
  std::vector<Eigen::Index> slot(g.vertex_count(), -1);
  for (Eigen::Index i = 0; i < n; ++i) slot[interior[static_cast<std::size_t>(i)]] = i;

  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::RestrictToOmega);
  std::vector<double> u(g.vertex_count(), 0.0);
  auto residual = [&](Eigen::VectorXd& r) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Index x = interior[static_cast<std::size_t>(i)];
      r(i) = -calculus::laplacian_at<double>(ctx, u, x) + spec.nonlinearity.value(x, u[x]) -
             data_at(spec.f, g.id(x));
    }
    return r.cwiseAbs().maxCoeff();
  };

  SolveReport report;
  Eigen::VectorXd r(n);
  double rn = residual(r);
  report.residual_history.push_back(rn);
  while (rn > spec.options.newton_tol) {
    if (report.iterations >= spec.options.newton_max_iterations || !std::isfinite(rn)) {
      report.status = SolveStatus::Diverged;
      report.message = "Newton iteration did not reach the tolerance; data may lie outside the "
                       "small-data neighborhood";
      break;
    }
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Index x = interior[static_cast<std::size_t>(i)];
      const double mx = g.measure(x);
      double diag = 0.0;
      for (const Neighbor& nb : g.neighbors(x)) {
        diag += nb.weight / mx;
        if (slot[nb.index] >= 0) jac(i, slot[nb.index]) -= nb.weight / mx;
      }
      jac(i, i) += diag + spec.nonlinearity.derivative(x, u[x]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) {
      report.status = SolveStatus::SingularJacobian;
      report.message = "Newton Jacobian is singular";
      break;
    }
    const Eigen::VectorXd step = lu.solve(-r);
    for (Eigen::Index i = 0; i < n; ++i) u[interior[static_cast<std::size_t>(i)]] += step(i);
    ++report.iterations;
    rn = residual(r);
    report.residual_history.push_back(rn);
  }
  for (std::size_t k = 1; k < report.residual_history.size(); ++k) {
    const double prev = report.residual_history[k - 1];
    report.residual_ratios.push_back(prev > 0.0 ? report.residual_history[k] / prev : 0.0);
  }
  report.solution = d.from_field(u);
  report.residual_inf = rn;
  report.boundary_ok = true;
  for (double v : report.solution.values()) report.solution_inf = std::max(report.solution_inf, std::abs(v));
  if (rn <= spec.options.newton_tol) report.status = SolveStatus::Converged;
  return report;
}

// ---------------------------------------------------------------------------

SolveReport solve(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::YamabeMP: return solve_yamabe_mp(spec);
    case ProblemKind::SemilinearDirichlet: return solve_semilinear_dirichlet(spec);
    case ProblemKind::YamabeWellPosed: return solve_yamabe_wellposed(spec);
    case ProblemKind::KazdanWarner: return solve_kazdan_warner(spec);
    case ProblemKind::SmallDataLaplace: return solve_small_data_newton(spec);
  }
  return hypothesis_failure("unknown problem kind");
}

}  // namespace graphpde
