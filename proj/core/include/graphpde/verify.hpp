#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <graphpde/graph.hpp>
#include <graphpde/nonlinearity.hpp>

namespace graphpde {

/// Non-decreasing piecewise-linear H with H(0) = 0, constant beyond the
/// outermost breakpoints.
class MonotoneH {
 public:
  /// Throws HNotAdmissible for a decreasing segment or H(0) != 0.
  static MonotoneH from_breakpoints(std::vector<std::pair<double, double>> points);
  /// H_n: 0 for t <= M - 1/n, n t - n M + 1 in between, 1 for t >= M.
  /// Requires n > 1/M so that H_n(0) = 0.
  static MonotoneH truncation(double M, int n);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& breakpoints() const noexcept { return points_; }

 private:
  std::vector<std::pair<double, double>> points_;
};

/// Breakpoints: sorted uniform draws in [-range, range] together with 0;
/// values: cumulative nonnegative increments shifted so that H(0) = 0.
MonotoneH random_monotone_h(std::mt19937_64& rng, double range, int breakpoints = 6);

struct CheckResult {
  std::string name;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  std::string context;
  std::map<std::string, double> details;
};

/// Admission threshold for "u is a solution".
inline constexpr double kSolutionResidual = 1e-8;

/// int |g(x,u1) - g(x,u2)| dm <= int |f1 - f2| dm for two solutions of
/// -Delta_p u + g(x, u) = f_i sharing boundary data. Throws NotASolution.
CheckResult check_oscillation(const Domain& d, const Nonlinearity& g, const VertexFunction& u1,
                              const VertexFunction& u2, const VertexFunction& f1,
                              const VertexFunction& f2, double p);

/// 0 <= int f H(u) dm for a solution of -Delta_p u = f, u = 0 on the
/// boundary. Also recomputes the right side as int |nabla u|^{p-2}
/// Gamma(u, H(u)) dm and requires each edge term to be nonnegative.
/// Throws NotASolution.
CheckResult check_h_inequality(const Domain& d, const VertexFunction& u, const VertexFunction& f,
                               const MonotoneH& H, double p);

/// The three level-set inequalities for a solution of -Delta_p u = f with
/// zero boundary data: int_{u >= M} f >= 0, int_{u <= -M} f <= 0 and
/// int_{|u| >= M} f sgn(u) >= 0. Throws NotASolution.
std::array<CheckResult, 3> check_sign_inequality(const Domain& d, const VertexFunction& u,
                                                 const VertexFunction& f, double M, double p);

}  // namespace graphpde
