#include <graphpde/calculus.hpp>

#include <algorithm>
#include <string>

namespace graphpde::calculus {

namespace {

void require_order(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidParameters, "order m must be a positive integer");
}

void require_exponent(double p) {
  if (!(p > 1.0) && !(p == 1.0)) {
    throw Error(ErrorCode::InvalidParameters, "exponent p must be >= 1");
  }
}

Index vertex_in_context(const OperatorContext& ctx, VertexId id) {
  const Index x = ctx.graph().index_of(id);
  if (!ctx.evaluates(x)) {
    throw Error(ErrorCode::InvalidParameters,
                "vertex " + std::to_string(id) + " lies outside omega in RestrictToOmega mode");
  }
  return x;
}

Index interior_vertex(const OperatorContext& ctx, VertexId id) {
  const Index x = ctx.graph().index_of(id);
  if (!ctx.domain().is_interior(x)) {
    throw Error(ErrorCode::InteriorOnly,
                "vertex " + std::to_string(id) + " is not an interior vertex of omega");
  }
  return x;
}

/// (Delta^T r) for the Laplacian of the context.
std::vector<double> laplacian_transpose(const OperatorContext& ctx, std::span<const double> r) {
  const WeightedGraph& g = ctx.graph();
  std::vector<double> out(r.size(), 0.0);
  for (Index x = 0; x < r.size(); ++x) {
    if (!ctx.evaluates(x) || r[x] == 0.0) continue;
    const double scaled = r[x] / g.measure(x);
    for (const Neighbor& nb : g.neighbors(x)) {
      if (!ctx.active(x, nb.index)) continue;
      out[nb.index] += nb.weight * scaled;
      out[x] -= nb.weight * scaled;
    }
  }
  return out;
}

}  // namespace

double slope_at(const OperatorContext& ctx, std::span<const double> u, Index x) {
  return std::sqrt(std::max(0.0, gradient_form_at<double>(ctx, u, u, x)));
}

std::vector<double> laplacian_power(const OperatorContext& ctx, std::span<const double> u, int k) {
  std::vector<double> v(u.begin(), u.end());
  for (int j = 0; j < k; ++j) v = laplacian_field<double>(ctx, v);
  return v;
}

std::vector<double> m_slope_field(const OperatorContext& ctx, std::span<const double> u, int m) {
  if (m < 0) throw Error(ErrorCode::InvalidParameters, "order m must be nonnegative");
  std::vector<double> out(u.size(), 0.0);
  const auto v = laplacian_power(ctx, u, m / 2);
  for (Index x : ctx.domain().omega()) {
    out[x] = (m % 2 == 1) ? slope_at(ctx, v, x) : std::abs(v[x]);
  }
  return out;
}

double p_laplacian_at(const OperatorContext& ctx, std::span<const double> u, double p, Index x) {
  const WeightedGraph& g = ctx.graph();
  const double sx = degenerate_power(slope_at(ctx, u, x), p - 2.0);
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) {
    if (!ctx.domain().contains(nb.index)) continue;
    const double sy = degenerate_power(slope_at(ctx, u, nb.index), p - 2.0);
    acc += (sy + sx) * nb.weight * (u[nb.index] - u[x]);
  }
  return acc / (2.0 * g.measure(x));
}

double mp_bilinear_field(const OperatorContext& ctx, std::span<const double> u,
                         std::span<const double> phi, int m, double p) {
  require_order(m);
  const WeightedGraph& g = ctx.graph();
  const int k = m / 2;
  const auto v = laplacian_power(ctx, u, k);
  const auto psi = laplacian_power(ctx, phi, k);
  double sum = 0.0;
  for (Index x : ctx.domain().omega()) {
    double s = 0.0;
    double pairing = 0.0;
    if (m % 2 == 1) {
      s = slope_at(ctx, v, x);
      pairing = gradient_form_at<double>(ctx, v, psi, x);
    } else {
      s = std::abs(v[x]);
      pairing = v[x] * psi[x];
    }
    sum += g.measure(x) * degenerate_power(s, p - 2.0) * pairing;
  }
  return sum;
}

std::vector<double> mp_bilinear_gradient(const OperatorContext& ctx, std::span<const double> u,
                                         int m, double p) {
  require_order(m);
  const WeightedGraph& g = ctx.graph();
  const int k = m / 2;
  const auto v = laplacian_power(ctx, u, k);
  std::vector<double> r(u.size(), 0.0);
  if (m % 2 == 1) {
    for (Index x : ctx.domain().omega()) {
      const double c = 0.5 * degenerate_power(slope_at(ctx, v, x), p - 2.0);
      if (c == 0.0) continue;
      for (const Neighbor& nb : g.neighbors(x)) {
        if (!ctx.active(x, nb.index)) continue;
        const double t = c * nb.weight * (v[nb.index] - v[x]);
        r[nb.index] += t;
        r[x] -= t;
      }
    }
  } else {
    for (Index x : ctx.domain().omega()) {
      r[x] = g.measure(x) * degenerate_power(std::abs(v[x]), p - 2.0) * v[x];
    }
  }
  for (int j = 0; j < k; ++j) r = laplacian_transpose(ctx, r);
  return r;
}

double lp_norm_field(const Domain& d, std::span<const double> u, double p) {
  if (std::isinf(p)) {
    double mx = 0.0;
    for (Index x : d.omega()) mx = std::max(mx, std::abs(u[x]));
    return mx;
  }
  require_exponent(p);
  double sum = 0.0;
  for (Index x : d.omega()) sum += std::pow(std::abs(u[x]), p) * d.graph().measure(x);
  return std::pow(sum, 1.0 / p);
}

double sobolev0_norm_field(const OperatorContext& ctx, std::span<const double> u, int m, double p) {
  return lp_norm_field(ctx.domain(), m_slope_field(ctx, u, m), p);
}

double sobolev_norm_field(const OperatorContext& ctx, std::span<const double> u, int m, double p) {
  double sum = 0.0;
  for (int k = 0; k <= m; ++k) sum += lp_norm_field(ctx.domain(), m_slope_field(ctx, u, k), p);
  return sum;
}

std::vector<double> boundary_constraint_residuals(const OperatorContext& ctx,
                                                  std::span<const double> u, int m) {
  require_order(m);
  const WeightedGraph& g = ctx.graph();
  std::vector<double> out;
  std::vector<double> v(u.begin(), u.end());
  for (int k = 0; k < m; ++k) {
    if (k > 0 && k % 2 == 0) v = laplacian_field<double>(ctx, v);
    for (Index b : ctx.domain().boundary()) {
      if (k % 2 == 0) {
        out.push_back(v[b]);
      } else {
        for (const Neighbor& nb : g.neighbors(b)) {
          if (ctx.active(b, nb.index)) out.push_back(v[nb.index] - v[b]);
        }
      }
    }
  }
  return out;
}

double max_boundary_slope(const OperatorContext& ctx, std::span<const double> u, int m) {
  require_order(m);
  double worst = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto s = m_slope_field(ctx, u, k);
    for (Index b : ctx.domain().boundary()) worst = std::max(worst, s[b]);
  }
  return worst;
}

// ---------------------------------------------------------------------------

double laplacian(const OperatorContext& ctx, const VertexFunction& u, VertexId x) {
  const Index i = vertex_in_context(ctx, x);
  const auto f = ctx.field(u);
  return laplacian_at<double>(ctx, f, i);
}

double gradient_form(const OperatorContext& ctx, const VertexFunction& u, const VertexFunction& v,
                     VertexId x) {
  const Index i = vertex_in_context(ctx, x);
  const auto fu = ctx.field(u);
  const auto fv = ctx.field(v);
  return gradient_form_at<double>(ctx, fu, fv, i);
}

double slope(const OperatorContext& ctx, const VertexFunction& u, VertexId x) {
  const Index i = vertex_in_context(ctx, x);
  return slope_at(ctx, ctx.field(u), i);
}

double m_slope(const OperatorContext& ctx, const VertexFunction& u, int m, VertexId x) {
  require_order(m);
  const Index i = ctx.graph().index_of(x);
  if (!ctx.domain().contains(i)) {
    throw Error(ErrorCode::InvalidParameters, "m-slope is evaluated on omega only");
  }
  return m_slope_field(ctx, ctx.field(u), m)[i];
}

double p_laplacian(const OperatorContext& ctx, const VertexFunction& u, double p, VertexId x) {
  require_exponent(p);
  const Index i = interior_vertex(ctx, x);
  return p_laplacian_at(ctx, ctx.field(u), p, i);
}

double mp_bilinear(const OperatorContext& ctx, const VertexFunction& u, const VertexFunction& phi,
                   int m, double p) {
  require_exponent(p);
  return mp_bilinear_field(ctx, ctx.field(u), ctx.field(phi), m, p);
}

PointwiseValue mp_laplacian_field(const OperatorContext& ctx, std::span<const double> u, int m,
                                  double p, Index x) {
  require_exponent(p);
  if (!ctx.domain().is_interior(x)) {
    throw Error(ErrorCode::InteriorOnly, "L_{m,p} is evaluated on interior vertices only");
  }
  std::vector<double> indicator(u.size(), 0.0);
  indicator[x] = 1.0;
  PointwiseValue out;
  out.value = mp_bilinear_field(ctx, u, indicator, m, p) / ctx.graph().measure(x);
  if (m >= 2) {
    const auto res = boundary_constraint_residuals(ctx, indicator, m);
    out.test_function_admissible =
        std::all_of(res.begin(), res.end(), [](double r) { return r == 0.0; });
  }
  return out;
}

PointwiseValue mp_laplacian(const OperatorContext& ctx, const VertexFunction& u, int m, double p,
                            VertexId x) {
  const Index i = interior_vertex(ctx, x);
  return mp_laplacian_field(ctx, ctx.field(u), m, p, i);
}

double lp_norm(const WeightedGraph& g, std::span<const VertexId> omega, const VertexFunction& u,
               double p) {
  if (std::isinf(p)) {
    double mx = 0.0;
    for (VertexId x : omega) mx = std::max(mx, std::abs(u.at(x)));
    return mx;
  }
  require_exponent(p);
  double sum = 0.0;
  for (VertexId x : omega) sum += std::pow(std::abs(u.at(x)), p) * g.measure(g.index_of(x));
  return std::pow(sum, 1.0 / p);
}

double sobolev_norm(const OperatorContext& ctx, const VertexFunction& u, int m, double p) {
  return sobolev_norm_field(ctx, ctx.field(u), m, p);
}

double sobolev0_norm(const OperatorContext& ctx, const VertexFunction& u, int m, double p) {
  require_order(m);
  return sobolev0_norm_field(ctx, ctx.field(u), m, p);
}

}  // namespace graphpde::calculus
