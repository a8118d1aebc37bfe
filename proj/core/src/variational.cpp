#include <graphpde/variational.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "optimize.hpp"

namespace graphpde {

using detail::Vec;

namespace {

void require_problem_orders(int m, double p) {
  if (m < 1) throw Error(ErrorCode::InvalidParameters, "order m must be a positive integer");
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidParameters, "exponent p must be > 1");
}

/// Phi^p / p and its coordinate gradient on an admissible space.
struct NormPower {
  const calculus::OperatorContext& ctx;
  const AdmissibleSpace& space;
  int m;
  double p;

  double phi(const Vec& c) const {
    const auto u = space.to_field(c);
    return calculus::sobolev0_norm_field(ctx, u, m, p);
  }
  double value(const Vec& c) const { return std::pow(phi(c), p) / p; }
  Vec gradient(const Vec& c) const {
    const auto u = space.to_field(c);
    return space.pull_back(calculus::mp_bilinear_gradient(ctx, u, m, p));
  }
};

/// Householder completion: an orthonormal basis of the complement of n.
Eigen::MatrixXd complement_basis(const Vec& n) {
  const auto k = static_cast<Eigen::Index>(n.size());
  Eigen::VectorXd v(k);
  for (Eigen::Index i = 0; i < k; ++i) v(i) = n[static_cast<std::size_t>(i)];
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  return q.rightCols(k - 1);
}

/// min { Phi(c) : n . c = 1 }, returning the minimizer.
double min_norm_on_hyperplane(const NormPower& np, const Vec& n, Vec& argmin) {
  const double nn = detail::dot(n, n);
  Vec c0(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) c0[i] = n[i] / nn;
  if (n.size() == 1) {
    argmin = c0;
    return np.phi(c0);
  }
  const Eigen::MatrixXd z = complement_basis(n);
  const auto k = z.cols();
  auto lift = [&](const Vec& y) {
    Vec c = c0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double yj = y[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += z(static_cast<Eigen::Index>(i), j) * yj;
    }
    return c;
  };
  detail::Objective obj;
  obj.value = [&](const Vec& y) { return np.value(lift(y)); };
  obj.gradient = [&](const Vec& y) {
    const Vec g = np.gradient(lift(y));
    Vec out(static_cast<std::size_t>(k), 0.0);
    for (Eigen::Index j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) s += z(static_cast<Eigen::Index>(i), j) * g[i];
      out[static_cast<std::size_t>(j)] = s;
    }
    return out;
  };
  detail::MinimizeOptions opts;
  opts.grad_tol = 1e-13;
  opts.max_iterations = 400;
  const auto r = detail::minimize(obj, Vec(static_cast<std::size_t>(k), 0.0), opts);
  argmin = lift(r.x);
  return np.phi(argmin);
}

double lq_norm(const Domain& d, std::span<const double> u, double q) {
  return calculus::lp_norm_field(d, u, q);
}

}  // namespace

// ---------------------------------------------------------------------------

SobolevResult sobolev_constant_detailed(const Domain& d, int m, double p, double q,
                                        const SobolevOptions& options) {
  require_problem_orders(m, p);
  if (!(q >= 1.0)) throw Error(ErrorCode::InvalidParameters, "exponent q must be >= 1");
  if (d.interior().empty()) {
    throw Error(ErrorCode::DegenerateDomain, "omega has no interior vertex");
  }
  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::ZeroExtend);
  const AdmissibleSpace space(ctx, m);
  if (space.dimension() == 0) {
    throw Error(ErrorCode::DegenerateDomain, "the admissible space W^{m,p}_0 is trivial");
  }
  const NormPower np{ctx, space, m, p};
  const std::size_t dim = space.dimension();
  const WeightedGraph& g = d.graph();

  // q = infinity: C = max_x max { u(x) : Phi(u) <= 1 } = max_x 1 / min { Phi : u(x) = 1 }.
  SobolevResult inf_result;
  Vec best_c;
  for (Index x : d.omega()) {
    Vec n(dim);
    for (std::size_t k = 0; k < dim; ++k) n[k] = space.basis_vector(k)[x];
    if (detail::inf_norm(n) == 0.0) continue;
    Vec c;
    const double phi = min_norm_on_hyperplane(np, n, c);
    const double h = 1.0 / phi;
    if (h > inf_result.constant) {
      inf_result.constant = h;
      inf_result.argmax = g.id(x);
      for (double& v : c) v /= phi;
      best_c = c;
    }
  }
  inf_result.maximizer = d.from_field(space.to_field(best_c));
  if (std::isinf(q)) return inf_result;

  // Finite q: maximize log ||u||_q - log Phi(u), a scale-invariant ratio.
  auto ratio = [&](const Vec& c) {
    const double phi = np.phi(c);
    if (phi == 0.0) return 0.0;
    return lq_norm(d, space.to_field(c), q) / phi;
  };
  detail::Objective obj;
  obj.value = [&](const Vec& c) {
    const double r = ratio(c);
    return r > 0.0 ? -std::log(r) : std::numeric_limits<double>::infinity();
  };
  obj.gradient = [&](const Vec& c) {
    const auto u = space.to_field(c);
    std::vector<double> dq(u.size(), 0.0);
    double sq = 0.0;
    for (Index x : d.omega()) {
      const double a = std::abs(u[x]);
      sq += std::pow(a, q) * g.measure(x);
      dq[x] = g.measure(x) * calculus::degenerate_power(a, q - 2.0) * u[x];
    }
    const Vec gq = space.pull_back(dq);
    const Vec gp = np.gradient(c);
    const double phip = std::pow(np.phi(c), p);
    Vec out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = gp[k] / phip - gq[k] / sq;
    return out;
  };

  SobolevResult result;
  result.lower_bound = true;
  Vec best = best_c;
  double best_ratio = ratio(best_c);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  detail::MinimizeOptions opts;
  opts.grad_tol = 1e-12;
  opts.max_iterations = 300;
  for (int run = 0; run <= options.restarts; ++run) {
    Vec start = best_c;
    if (run > 0) {
      for (double& v : start) v = normal(rng);
    }
    if (detail::inf_norm(start) == 0.0) continue;
    auto r = detail::minimize(obj, start, opts);
    const double rr = ratio(r.x);
    if (rr > best_ratio) {
      best_ratio = rr;
      best = r.x;
    }
  }
  for (int s = 0; s < options.oracle_samples; ++s) {
    Vec c(dim);
    for (double& v : c) v = normal(rng);
    const double rr = ratio(c);
    result.sampled_lower_bound = std::max(result.sampled_lower_bound, rr);
    if (rr > best_ratio) {
      best_ratio = rr;
      best = c;
    }
  }
  const double phi = np.phi(best);
  for (double& v : best) v /= phi;
  result.constant = best_ratio;
  result.maximizer = d.from_field(space.to_field(best));
  return result;
}

double sobolev_constant(const Domain& d, int m, double p, double q) {
  return sobolev_constant_detailed(d, m, p, q).constant;
}

// ---------------------------------------------------------------------------

namespace {

void require_threshold_parameters(double p, double q, double C, double normA, double normB) {
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidParameters, "threshold needs p > 1");
  if (!(q >= p - 1.0 - 1e-12)) throw Error(ErrorCode::InvalidParameters, "threshold needs q >= p - 1");
  if (!(C > 0.0) || !std::isfinite(C)) {
    throw Error(ErrorCode::InvalidParameters, "Sobolev constant must be positive and finite");
  }
  if (!(normA > 0.0)) throw Error(ErrorCode::InvalidParameters, "||a||_1 must be positive");
  if (!(normB > 0.0)) throw Error(ErrorCode::InvalidParameters, "||b||_1 must be positive");
}

bool limit_case(double p, double q) { return std::abs(q - (p - 1.0)) <= 1e-12; }

}  // namespace

double lambda_rho(double rho, double p, double q, double C, double normA, double normB) {
  require_threshold_parameters(p, q, C, normA, normB);
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidParameters, "rho must be positive");
  if (std::isinf(rho)) {
    return limit_case(p, q) ? 1.0 / (std::pow(C, p) * normB) : 0.0;
  }
  return std::pow(rho, p - 1.0) / (C * normA + std::pow(C, q + 1.0) * normB * std::pow(rho, q));
}

Threshold threshold_Lambda(double p, double q, double C, double normA, double normB) {
  require_threshold_parameters(p, q, C, normA, normB);
  Threshold t;
  if (limit_case(p, q)) {
    t.Lambda = 1.0 / (std::pow(C, p) * normB);
    t.rho_star = std::numeric_limits<double>::infinity();
    return t;
  }
  const double rho_q =
      (p - 1.0) * C * normA / (std::pow(C, q + 1.0) * normB * (q - p + 1.0));
  t.rho_star = std::pow(rho_q, 1.0 / q);
  t.Lambda = lambda_rho(t.rho_star, p, q, C, normA, normB);
  return t;
}

// ---------------------------------------------------------------------------

EnergyFunctional::EnergyFunctional(Domain d, int m, double p, double lambda, Nonlinearity f)
    : ctx_(std::move(d), calculus::ExtensionMode::ZeroExtend),
      m_(m),
      p_(p),
      lambda_(lambda),
      f_(std::move(f)) {
  require_problem_orders(m, p);
  space_ = std::make_shared<const AdmissibleSpace>(ctx_, m);
}

double EnergyFunctional::phi(std::span<const double> field) const {
  return calculus::sobolev0_norm_field(ctx_, field, m_, p_);
}

double EnergyFunctional::value(std::span<const double> field) const {
  const WeightedGraph& g = ctx_.graph();
  double psi = 0.0;
  if (lambda_ != 0.0) {
    for (Index x : ctx_.domain().omega()) psi += f_.primitive(x, field[x]) * g.measure(x);
  }
  return std::pow(phi(field), p_) / p_ - lambda_ * psi;
}

std::vector<double> EnergyFunctional::gradient(std::span<const double> field) const {
  const WeightedGraph& g = ctx_.graph();
  auto out = calculus::mp_bilinear_gradient(ctx_, field, m_, p_);
  for (Index x = 0; x < out.size(); ++x) {
    if (!ctx_.domain().contains(x)) {
      out[x] = 0.0;
    } else if (lambda_ != 0.0) {
      out[x] -= lambda_ * g.measure(x) * f_.value(x, field[x]);
    }
  }
  return out;
}

std::vector<double> EnergyFunctional::gradient_coords(const std::vector<double>& c) const {
  return space_->pull_back(gradient(space_->to_field(c)));
}

namespace {

std::vector<double> admissible_field(const EnergyFunctional& ef, const VertexFunction& u) {
  const auto field = ef.domain().to_field(u);
  double scale = 1.0;
  for (double v : field) scale = std::max(scale, std::abs(v));
  const double violation = ef.space().constraint_violation(field);
  if (violation > 1e-12 * scale) {
    throw Error(ErrorCode::ConstraintViolation,
                "function violates the W^{m,p}_0 boundary conditions by " +
                    expr::format_double(violation));
  }
  return field;
}

}  // namespace

double energy_value(const EnergyFunctional& ef, const VertexFunction& u) {
  return ef.value(admissible_field(ef, u));
}

VertexFunction energy_gradient(const EnergyFunctional& ef, const VertexFunction& u) {
  return ef.domain().from_field(ef.gradient(admissible_field(ef, u)));
}

// ---------------------------------------------------------------------------

namespace {

struct Run {
  Vec c;
  double energy = 0.0;
  double phi = 0.0;
  double projected_gradient = 0.0;
  int iterations = 0;
  bool max_hit = false;
  std::vector<double> trace;
};

Vec project(const EnergyFunctional& ef, const Vec& c, double rho, double* phi_out = nullptr) {
  const double phi = ef.phi(ef.space().to_field(c));
  if (phi_out) *phi_out = std::min(phi, rho);
  if (phi <= rho) return c;
  Vec out = c;
  const double s = rho / phi;
  for (double& v : out) v *= s;
  return out;
}

Run descend(const EnergyFunctional& ef, double rho, Vec start, const BallOptions& options,
            int max_iterations) {
  Run run;
  run.c = project(ef, start, rho);
  run.energy = ef.value_coords(run.c);
  run.trace.push_back(run.energy);
  const double armijo = 1e-4;
  double step = 1.0;
  auto grad = [&](const Vec& c) { return ef.gradient_coords(c); };

  for (;;) {
    const Vec g = grad(run.c);
    const Vec pg_point = project(ef, detail::axpy(run.c, -1.0, g), rho);
    Vec pg(run.c.size());
    for (std::size_t i = 0; i < pg.size(); ++i) pg[i] = run.c[i] - pg_point[i];
    run.projected_gradient = detail::inf_norm(pg);
    if (run.projected_gradient <= options.grad_tol) break;
    if (run.iterations >= max_iterations) {
      run.max_hit = true;
      break;
    }
    ++run.iterations;

    const double phi = ef.phi(ef.space().to_field(run.c));
    const bool interior = phi < rho * (1.0 - 1e-9);
    bool accepted = false;
    Vec newton;
    const bool have_newton =
        interior && detail::newton_direction(detail::fd_hessian(grad, run.c), g, newton);

    if (have_newton) {
      const double slope = detail::dot(g, newton);
      double s = 1.0;
      for (int k = 0; k < 60 && !accepted; ++k, s *= 0.5) {
        const Vec trial = detail::axpy(run.c, s, newton);
        if (ef.phi(ef.space().to_field(trial)) > rho) continue;
        const double e = ef.value_coords(trial);
        if (e <= run.energy + armijo * s * slope) {
          run.c = trial;
          run.energy = e;
          accepted = true;
        }
      }
    }
    if (!accepted) {
      double s = step;
      for (int k = 0; k < 80 && !accepted; ++k, s *= 0.5) {
        const Vec trial = project(ef, detail::axpy(run.c, -s, g), rho);
        Vec delta(trial.size());
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = trial[i] - run.c[i];
        const double e = ef.value_coords(trial);
        if (e <= run.energy + armijo * detail::dot(g, delta)) {
          run.c = trial;
          run.energy = e;
          accepted = true;
          step = std::min(1e6, 2.0 * s);
        }
      }
    }
    if (!accepted && have_newton) {
      // Rounding regime: take the full Newton step if it halves the gradient
      // without raising the energy beyond rounding.
      const Vec trial = detail::axpy(run.c, 1.0, newton);
      if (ef.phi(ef.space().to_field(trial)) <= rho) {
        const double e = ef.value_coords(trial);
        if (e <= run.energy + 1e-14 * (1.0 + std::abs(run.energy)) &&
            detail::inf_norm(grad(trial)) <= 0.5 * detail::inf_norm(g)) {
          run.c = trial;
          run.energy = e;
          accepted = true;
        }
      }
    }
    if (!accepted) break;
    run.trace.push_back(run.energy);
  }
  run.phi = ef.phi(ef.space().to_field(run.c));
  return run;
}

bool better(const Run& a, const Run& b, const EnergyFunctional& ef) {
  if (std::abs(a.energy - b.energy) > 1e-12) return a.energy < b.energy;
  if (a.phi != b.phi) return a.phi < b.phi;
  const auto fa = ef.space().to_field(a.c);
  const auto fb = ef.space().to_field(b.c);
  return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
}

}  // namespace

BallMinimum minimize_on_ball(const EnergyFunctional& ef, double rho, const BallOptions& options) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidParameters, "rho must be positive");
  const std::size_t dim = ef.space().dimension();
  if (dim == 0) throw Error(ErrorCode::DegenerateDomain, "the admissible space W^{m,p}_0 is trivial");
  const int max_iterations =
      options.max_iterations > 0 ? options.max_iterations : static_cast<int>(500 * dim);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::vector<Run> runs;
  runs.push_back(descend(ef, rho, Vec(dim, 0.0), options, max_iterations));
  for (int s = 0; s < options.random_starts; ++s) {
    Vec c(dim);
    for (double& v : c) v = normal(rng);
    const double phi = ef.phi(ef.space().to_field(c));
    const double radius = rho * uniform(rng);
    if (phi > 0.0) {
      for (double& v : c) v *= radius / phi;
    }
    runs.push_back(descend(ef, rho, c, options, max_iterations));
  }

  const Run* best = &runs.front();
  for (const Run& r : runs) {
    if (better(r, *best, ef)) best = &r;
  }

  BallMinimum out;
  out.field = ef.space().to_field(best->c);
  out.u = ef.domain().from_field(out.field);
  out.energy = best->energy;
  out.phi = best->phi;
  out.interior = best->phi <= rho * (1.0 - 1e-9);
  out.projected_gradient = best->projected_gradient;
  out.iterations = best->iterations;
  out.max_iterations_hit = best->max_hit;
  out.energy_trace = best->trace;
  return out;
}

}  // namespace graphpde
