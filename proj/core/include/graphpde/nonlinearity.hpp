#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <graphpde/expression.hpp>
#include <graphpde/graph.hpp>

namespace graphpde {

enum class NonlinearityKind { PowerYamabe, Exponential, Expression };

/// Certificate |f(x,t)| <= a(x) + b(x)|t|^q with a, b >= 0.
struct GrowthData {
  double q = 1.0;
  VertexFunction a;
  VertexFunction b;
};

/// A Caratheodory function f(x, t) on the vertices of a graph, with exact
/// t-derivative and primitive F(x, t) = int_0^t f(x, s) ds.
///
///   PowerYamabe:  a(x) + sign * b(x) * sgn(t)|t|^q     (sign = -1 or +1)
///   Exponential:  alpha(x) * exp(beta(x) t)
///   Expression:   parsed tree in t with per-vertex coefficient bindings
///
/// Coefficients are bound to the graph once; evaluating at a vertex without
/// a coefficient value throws MissingValue.
class Nonlinearity {
 public:
  /// The zero function.
  Nonlinearity() = default;

  static Nonlinearity power(const WeightedGraph& g, const VertexFunction& a, const VertexFunction& b,
                            double q, double sign = -1.0);
  static Nonlinearity exponential(const WeightedGraph& g, const VertexFunction& alpha,
                                  const VertexFunction& beta);
  static Nonlinearity expression(const WeightedGraph& g, expr::Expression tree,
                                 const expr::SymbolTable& symbols,
                                 const std::map<std::string, VertexFunction>& coefficients);

  NonlinearityKind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return zero_; }

  double value(Index x, double t) const;
  double derivative(Index x, double t) const;
  /// F(x, t); closed form for the first two kinds, adaptive quadrature
  /// (absolute tolerance 1e-12) for expressions.
  double primitive(Index x, double t) const;

  double value_at(const WeightedGraph& g, VertexId x, double t) const {
    return value(g.index_of(x), t);
  }

  const std::optional<GrowthData>& growth() const noexcept { return growth_; }
  void set_growth(GrowthData data) { growth_ = std::move(data); }

  const expr::Expression* tree() const noexcept { return tree_.get(); }
  std::string describe() const;

 private:
  const double* coefficients_at(Index x) const;

  NonlinearityKind kind_ = NonlinearityKind::PowerYamabe;
  bool zero_ = true;
  double q_ = 1.0;
  double sign_ = -1.0;
  // Row-major table: vertex index -> coefficient slots (NaN where unset).
  std::size_t slots_ = 0;
  std::vector<double> table_;
  std::vector<std::string> slot_names_;
  std::shared_ptr<const expr::Expression> tree_;
  std::optional<GrowthData> growth_;
};

/// F(x, t) addressed by vertex identifier.
double primitive_F(const Nonlinearity& nl, const WeightedGraph& g, VertexId x, double t);

/// Largest violation of the growth bound over x in Omega and a symmetric
/// t-grid; <= 0 means the certificate holds on the grid.
double growth_violation(const Nonlinearity& nl, const Domain& d, double t_max = 10.0,
                        int points = 201);

struct MonotonicityReport {
  bool monotone = true;
  double min_derivative = 0.0;
  VertexId worst_vertex = 0;
  double worst_t = 0.0;
};

/// Grid certificate that t -> f(x, t) is non-decreasing on [-range, range]
/// for x in the given vertices: derivative >= -1e-12 at every grid point.
MonotonicityReport check_monotone(const Nonlinearity& nl, const WeightedGraph& g,
                                  std::span<const Index> vertices, double range = 10.0,
                                  int points = 2048);

}  // namespace graphpde
