#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <graphpde/graph.hpp>

namespace graphpde::calculus {

/// Which neighbor sums an operator sees.
///
/// ZeroExtend: u is extended by zero off Omega and every sum ranges over all
/// of V. Used for W^{m,p}_0 functions; operators may be evaluated anywhere in
/// V, which supplies the halo that higher-order slopes need.
///
/// RestrictToOmega: sums range over neighbors inside Omega only, while m(x)
/// stays the global measure. Used for W^{1,p}(Omega) problems with boundary
/// data. The two modes agree on functions that vanish on the boundary.
enum class ExtensionMode { ZeroExtend, RestrictToOmega };

class OperatorContext {
 public:
  explicit OperatorContext(Domain domain, ExtensionMode mode = ExtensionMode::ZeroExtend)
      : domain_(std::move(domain)), mode_(mode) {}

  const Domain& domain() const noexcept { return domain_; }
  const WeightedGraph& graph() const noexcept { return domain_.graph(); }
  ExtensionMode mode() const noexcept { return mode_; }

  /// Whether the edge (x,y) enters neighbor sums.
  bool active(Index x, Index y) const {
    return mode_ == ExtensionMode::ZeroExtend || (domain_.contains(x) && domain_.contains(y));
  }
  /// Whether Laplacian-type operators are evaluated at x.
  bool evaluates(Index x) const {
    return mode_ == ExtensionMode::ZeroExtend || domain_.contains(x);
  }

  /// Dense field for u (see Domain::to_field).
  std::vector<double> field(const VertexFunction& u) const { return domain_.to_field(u); }

 private:
  Domain domain_;
  ExtensionMode mode_;
};

/// s^e with the convention 0^e = 0 for e < 0 (degenerate p < 2 weights).
inline double degenerate_power(double s, double e) {
  if (e == 0.0) return 1.0;
  if (s == 0.0) return 0.0;
  return std::pow(s, e);
}

// ---------------------------------------------------------------------------
// Linear kernels, generic in the scalar type.

template <class T>
T laplacian_at(const OperatorContext& ctx, std::span<const T> u, Index x) {
  const WeightedGraph& g = ctx.graph();
  T acc(0);
  for (const Neighbor& nb : g.neighbors(x)) {
    if (!ctx.active(x, nb.index)) continue;
    acc += T(nb.weight) * (u[nb.index] - u[x]);
  }
  return acc / T(g.measure(x));
}

/// Delta u at every vertex where the context evaluates, zero elsewhere.
template <class T>
std::vector<T> laplacian_field(const OperatorContext& ctx, std::span<const T> u) {
  std::vector<T> out(u.size(), T(0));
  for (Index x = 0; x < u.size(); ++x) {
    if (ctx.evaluates(x)) out[x] = laplacian_at<T>(ctx, u, x);
  }
  return out;
}

template <class T>
T gradient_form_at(const OperatorContext& ctx, std::span<const T> u, std::span<const T> v,
                   Index x) {
  const WeightedGraph& g = ctx.graph();
  T acc(0);
  for (const Neighbor& nb : g.neighbors(x)) {
    if (!ctx.active(x, nb.index)) continue;
    acc += T(nb.weight) * (u[nb.index] - u[x]) * (v[nb.index] - v[x]);
  }
  return acc / (T(2) * T(g.measure(x)));
}

// ---------------------------------------------------------------------------
// Field-level operators (dense vectors indexed by graph Index).

double slope_at(const OperatorContext& ctx, std::span<const double> u, Index x);

/// Delta^k u.
std::vector<double> laplacian_power(const OperatorContext& ctx, std::span<const double> u, int k);

/// |nabla^m u| on Omega (zero off Omega). m = 0 gives |u|.
std::vector<double> m_slope_field(const OperatorContext& ctx, std::span<const double> u, int m);

/// Delta_p u(x) with the symmetric 1/2 weighting, so Delta_2 = Delta.
double p_laplacian_at(const OperatorContext& ctx, std::span<const double> u, double p, Index x);

/// The (m,p) energy pairing: int_Omega |nabla^m u|^{p-2} B(u,phi) dm, where B
/// is Gamma(Delta^k u, Delta^k phi) for m = 2k+1 and Delta^k u Delta^k phi
/// for m = 2k.
double mp_bilinear_field(const OperatorContext& ctx, std::span<const double> u,
                         std::span<const double> phi, int m, double p);

/// The linear form phi -> mp_bilinear(u, phi) as a dense vector: entry z is
/// mp_bilinear(u, e_z). Computed by an adjoint sweep in O(m |E|). Equals the
/// gradient of (1/p) ||nabla^m u||_p^p.
std::vector<double> mp_bilinear_gradient(const OperatorContext& ctx, std::span<const double> u,
                                         int m, double p);

/// L^p(Omega) norm of a field; p may be +infinity.
double lp_norm_field(const Domain& d, std::span<const double> u, double p);

/// ||nabla^m u||_{L^p(Omega)}.
double sobolev0_norm_field(const OperatorContext& ctx, std::span<const double> u, int m, double p);

/// sum_{k=0}^m ||nabla^k u||_{L^p(Omega)}.
double sobolev_norm_field(const OperatorContext& ctx, std::span<const double> u, int m, double p);

/// Linear residuals whose vanishing is exactly |nabla^k u| = 0 on the
/// boundary for 0 <= k <= m-1: u(b) for k = 0, the differences
/// Delta^j u(y) - Delta^j u(b) over neighbors for k = 2j+1, and Delta^j u(b)
/// for k = 2j.
std::vector<double> boundary_constraint_residuals(const OperatorContext& ctx,
                                                  std::span<const double> u, int m);

/// max over b in the boundary and k < m of |nabla^k u|(b).
double max_boundary_slope(const OperatorContext& ctx, std::span<const double> u, int m);

// ---------------------------------------------------------------------------
// Vertex-function API.

double laplacian(const OperatorContext& ctx, const VertexFunction& u, VertexId x);
double gradient_form(const OperatorContext& ctx, const VertexFunction& u, const VertexFunction& v,
                     VertexId x);
double slope(const OperatorContext& ctx, const VertexFunction& u, VertexId x);
double m_slope(const OperatorContext& ctx, const VertexFunction& u, int m, VertexId x);
/// Throws InteriorOnly for x outside the interior.
double p_laplacian(const OperatorContext& ctx, const VertexFunction& u, double p, VertexId x);
double mp_bilinear(const OperatorContext& ctx, const VertexFunction& u, const VertexFunction& phi,
                   int m, double p);

struct PointwiseValue {
  double value = 0.0;
  /// False when m >= 2 and the indicator of x violates the C^m_0 boundary
  /// conditions; value is then the pairing against the raw indicator.
  bool test_function_admissible = true;
};

/// L_{m,p} u(x) = mp_bilinear(u, e_x) / m(x). Throws InteriorOnly.
PointwiseValue mp_laplacian(const OperatorContext& ctx, const VertexFunction& u, int m, double p,
                            VertexId x);
PointwiseValue mp_laplacian_field(const OperatorContext& ctx, std::span<const double> u, int m,
                                  double p, Index x);

double lp_norm(const WeightedGraph& g, std::span<const VertexId> omega, const VertexFunction& u,
               double p);
double sobolev_norm(const OperatorContext& ctx, const VertexFunction& u, int m, double p);
double sobolev0_norm(const OperatorContext& ctx, const VertexFunction& u, int m, double p);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace graphpde::calculus
