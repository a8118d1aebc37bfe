#include <graphpde/oracle.hpp>

#include <cmath>
#include <random>

#include <graphpde/admissible_space.hpp>

namespace graphpde {

namespace {

using Matrix = std::vector<std::vector<double>>;

struct Dense {
  std::size_t n = 0;
  Matrix w;
  std::vector<double> mass;
  std::vector<char> in_omega;
  bool restrict = false;

  bool active(std::size_t x, std::size_t y) const {
    return !restrict || (in_omega[x] && in_omega[y]);
  }
  bool evaluates(std::size_t x) const { return !restrict || in_omega[x]; }
};

Dense densify(const calculus::OperatorContext& ctx) {
  const WeightedGraph& g = ctx.graph();
  Dense d;
  d.n = g.vertex_count();
  d.w.assign(d.n, std::vector<double>(d.n, 0.0));
  for (std::size_t x = 0; x < d.n; ++x) {
    for (std::size_t y = 0; y < d.n; ++y) d.w[x][y] = g.weight(x, y);
  }
  d.mass.assign(d.n, 0.0);
  for (std::size_t x = 0; x < d.n; ++x) {
    for (std::size_t y = 0; y < d.n; ++y) d.mass[x] += d.w[x][y];
  }
  d.in_omega.assign(d.n, 0);
  for (std::size_t x = 0; x < d.n; ++x) d.in_omega[x] = ctx.domain().contains(x) ? 1 : 0;
  d.restrict = ctx.mode() == calculus::ExtensionMode::RestrictToOmega;
  return d;
}

std::vector<double> lap(const Dense& d, const std::vector<double>& v) {
  std::vector<double> out(d.n, 0.0);
  for (std::size_t x = 0; x < d.n; ++x) {
    if (!d.evaluates(x)) continue;
    double s = 0.0;
    for (std::size_t y = 0; y < d.n; ++y) {
      if (d.active(x, y)) s += d.w[x][y] * (v[y] - v[x]);
    }
    out[x] = s / d.mass[x];
  }
  return out;
}

double gamma(const Dense& d, const std::vector<double>& a, const std::vector<double>& b,
             std::size_t x) {
  double s = 0.0;
  for (std::size_t y = 0; y < d.n; ++y) {
    if (d.active(x, y)) s += d.w[x][y] * (a[y] - a[x]) * (b[y] - b[x]);
  }
  return s / (2.0 * d.mass[x]);
}

double power(double s, double e) {
  if (e == 0.0) return 1.0;
  if (s == 0.0) return 0.0;
  return std::pow(s, e);
}

}  // namespace

double oracle_mp_laplacian_field(const calculus::OperatorContext& ctx, std::span<const double> u,
                                 int m, double p, Index x) {
  if (m < 1) throw Error(ErrorCode::InvalidParameters, "order m must be a positive integer");
  if (!ctx.domain().is_interior(x)) {
    throw Error(ErrorCode::InteriorOnly, "L_{m,p} is evaluated on interior vertices only");
  }
  const Dense d = densify(ctx);
  std::vector<double> v(u.begin(), u.end());
  std::vector<double> psi(d.n, 0.0);
  psi[x] = 1.0;
  for (int j = 0; j < m / 2; ++j) {
    v = lap(d, v);
    psi = lap(d, psi);
  }
  double total = 0.0;
  for (std::size_t z = 0; z < d.n; ++z) {
    if (!d.in_omega[z]) continue;
    double slope = 0.0;
    double pairing = 0.0;
    if (m % 2 == 1) {
      slope = std::sqrt(std::max(0.0, gamma(d, v, v, z)));
      pairing = gamma(d, v, psi, z);
    } else {
      slope = std::abs(v[z]);
      pairing = v[z] * psi[z];
    }
    total += d.mass[z] * power(slope, p - 2.0) * pairing;
  }
  return total / d.mass[x];
}

double oracle_mp_laplacian(const calculus::OperatorContext& ctx, const VertexFunction& u, int m,
                           double p, VertexId x) {
  const WeightedGraph& g = ctx.graph();
  std::vector<double> field(g.vertex_count(), 0.0);
  for (Index i : ctx.domain().omega()) field[i] = u.at(g.id(i));
  return oracle_mp_laplacian_field(ctx, field, m, p, g.index_of(x));
}

double oracle_sobolev_constant(const Domain& d, int m, double p, double q, int samples,
                               std::uint64_t seed) {
  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::ZeroExtend);
  const AdmissibleSpace space(ctx, m);
  if (space.dimension() == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double best = 0.0;
  std::vector<double> c(space.dimension());
  for (int s = 0; s < samples; ++s) {
    for (double& v : c) v = normal(rng);
    const auto u = space.to_field(c);
    const double phi = calculus::sobolev0_norm_field(ctx, u, m, p);
    if (phi == 0.0) continue;
    best = std::max(best, calculus::lp_norm_field(d, u, q) / phi);
  }
  return best;
}

}  // namespace graphpde
