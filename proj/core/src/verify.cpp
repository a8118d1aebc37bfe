#include <graphpde/verify.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <graphpde/calculus.hpp>
#include <graphpde/solvers.hpp>

namespace graphpde {

MonotoneH MonotoneH::from_breakpoints(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw Error(ErrorCode::HNotAdmissible, "H needs at least one breakpoint");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second)) {
      throw Error(ErrorCode::HNotAdmissible, "H breakpoints must be finite");
    }
    if (i > 0 && points[i].first == points[i - 1].first) {
      throw Error(ErrorCode::HNotAdmissible, "duplicate H breakpoint");
    }
    if (i > 0 && points[i].second < points[i - 1].second) {
      throw Error(ErrorCode::HNotAdmissible, "H has a decreasing segment");
    }
  }
  MonotoneH h;
  h.points_ = std::move(points);
  if (h(0.0) != 0.0) throw Error(ErrorCode::HNotAdmissible, "H(0) must be 0");
  return h;
}

MonotoneH MonotoneH::truncation(double M, int n) {
  if (!(M > 0.0) || n < 1 || !(n > 1.0 / M)) {
    throw Error(ErrorCode::HNotAdmissible, "H_n needs M > 0 and n > 1/M");
  }
  const double lo = M - 1.0 / n;
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}, {lo, 0.0}, {M, 1.0}};
  if (lo == 0.0) pts.erase(pts.begin());
  return from_breakpoints(std::move(pts));
}

double MonotoneH::operator()(double t) const {
  if (t <= points_.front().first) return points_.front().second;
  if (t >= points_.back().first) return points_.back().second;
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double v, const auto& pt) { return v < pt.first; });
  const auto& [t1, h1] = *it;
  const auto& [t0, h0] = *(it - 1);
  // The clamp keeps floating-point evaluation monotone across breakpoints.
  const double slope = (h1 - h0) / (t1 - t0);
  return std::min(h1, h0 + slope * (t - t0));
}

MonotoneH random_monotone_h(std::mt19937_64& rng, double range, int breakpoints) {
  std::uniform_real_distribution<double> where(-range, range);
  std::uniform_real_distribution<double> rise(0.0, 2.0);
  std::vector<double> ts{0.0};
  for (int i = 0; i < breakpoints; ++i) ts.push_back(where(rng));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::pair<double, double>> pts;
  double acc = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) acc += rise(rng);
    pts.emplace_back(ts[i], acc);
  }
  const double shift = std::find_if(pts.begin(), pts.end(), [](const auto& p) {
                         return p.first == 0.0;
                       })->second;
  for (auto& p : pts) p.second -= shift;
  return MonotoneH::from_breakpoints(std::move(pts));
}

// ---------------------------------------------------------------------------

namespace {

double value_or_zero(const VertexFunction& f, VertexId x) {
  if (f.empty()) return 0.0;
  return f.at(x);
}

void require_solution(const Domain& d, const VertexFunction& u, const VertexFunction& f, double p,
                      const Nonlinearity& g, const char* which) {
  const double r = dirichlet_residual(d, u, p, g, f);
  if (!(r <= kSolutionResidual)) {
    throw Error(ErrorCode::NotASolution, std::string(which) + " has residual " +
                                             expr::format_double(r) + " above " +
                                             expr::format_double(kSolutionResidual));
  }
}

void require_zero_boundary(const Domain& d, const VertexFunction& u) {
  for (Index b : d.boundary()) {
    const double v = u.at(d.graph().id(b));
    if (v != 0.0) {
      throw Error(ErrorCode::NotASolution,
                  "boundary value " + expr::format_double(v) + " at vertex " +
                      std::to_string(d.graph().id(b)) + " is not zero");
    }
  }
}

CheckResult finish(CheckResult r) {
  r.slack = r.rhs - r.lhs;
  r.passed = r.slack >= -r.tolerance;
  return r;
}

}  // namespace

CheckResult check_oscillation(const Domain& d, const Nonlinearity& g, const VertexFunction& u1,
                              const VertexFunction& u2, const VertexFunction& f1,
                              const VertexFunction& f2, double p) {
  require_solution(d, u1, f1, p, g, "u1");
  require_solution(d, u2, f2, p, g, "u2");
  const WeightedGraph& gr = d.graph();
  for (Index b : d.boundary()) {
    const VertexId id = gr.id(b);
    if (std::abs(u1.at(id) - u2.at(id)) > 1e-12) {
      throw Error(ErrorCode::NotASolution,
                  "u1 and u2 have different boundary data at vertex " + std::to_string(id));
    }
  }
  CheckResult r;
  r.name = "oscillation";
  for (Index x : d.omega()) {
    const VertexId id = gr.id(x);
    r.lhs += std::abs(g.value(x, u1.at(id)) - g.value(x, u2.at(id))) * gr.measure(x);
  }
  for (Index x : d.interior()) {
    const VertexId id = gr.id(x);
    r.rhs += std::abs(value_or_zero(f1, id) - value_or_zero(f2, id)) * gr.measure(x);
  }
  r.tolerance = 1e-8 * (1.0 + r.rhs);
  return finish(std::move(r));
}

CheckResult check_h_inequality(const Domain& d, const VertexFunction& u, const VertexFunction& f,
                               const MonotoneH& H, double p) {
  const Nonlinearity zero;
  require_solution(d, u, f, p, zero, "u");
  require_zero_boundary(d, u);
  const WeightedGraph& g = d.graph();
  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::RestrictToOmega);
  const auto field = d.to_field(u);
  std::vector<double> hu(field.size(), 0.0);
  for (Index x : d.omega()) hu[x] = H(field[x]);

  CheckResult r;
  r.name = "h_inequality";
  for (Index x : d.interior()) r.rhs += value_or_zero(f, g.id(x)) * hu[x] * g.measure(x);

  double identity = 0.0;
  double termwise_min = std::numeric_limits<double>::infinity();
  for (Index x : d.omega()) {
    const double weight = calculus::degenerate_power(calculus::slope_at(ctx, field, x), p - 2.0);
    double form = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) {
      if (!d.contains(nb.index)) continue;
      const double term =
          nb.weight * (field[nb.index] - field[x]) * (hu[nb.index] - hu[x]);
      termwise_min = std::min(termwise_min, term);
      form += term;
    }
    identity += weight * form / 2.0;
  }
  r.tolerance = 1e-10 * (1.0 + std::abs(r.rhs));
  r.details["identity"] = identity;
  r.details["termwise_min"] = termwise_min;
  r = finish(std::move(r));
  const bool identity_ok = std::abs(identity - r.rhs) <= 1e-8 * (1.0 + std::abs(r.rhs));
  const bool termwise_ok = termwise_min >= 0.0;
  r.details["identity_ok"] = identity_ok ? 1.0 : 0.0;
  r.details["termwise_ok"] = termwise_ok ? 1.0 : 0.0;
  r.passed = r.passed && identity_ok && termwise_ok;
  return r;
}

std::array<CheckResult, 3> check_sign_inequality(const Domain& d, const VertexFunction& u,
                                                 const VertexFunction& f, double M, double p) {
  if (!(M > 0.0)) throw Error(ErrorCode::InvalidParameters, "level M must be positive");
  const Nonlinearity zero;
  require_solution(d, u, f, p, zero, "u");
  require_zero_boundary(d, u);
  const WeightedGraph& g = d.graph();
  std::array<CheckResult, 3> out;
  out[0].name = "sign_upper";
  out[1].name = "sign_lower";
  out[2].name = "sign_abs";
  for (Index x : d.interior()) {
    const VertexId id = g.id(x);
    const double ux = u.at(id);
    const double fm = value_or_zero(f, id) * g.measure(x);
    if (ux >= M) out[0].rhs += fm;
    if (ux <= -M) out[1].rhs -= fm;
    if (std::abs(ux) >= M) out[2].rhs += fm * (ux > 0.0 ? 1.0 : (ux < 0.0 ? -1.0 : 0.0));
  }
  for (auto& r : out) {
    r.tolerance = 1e-10;
    r.details["M"] = M;
    r = finish(std::move(r));
  }
  return out;
}

}  // namespace graphpde
