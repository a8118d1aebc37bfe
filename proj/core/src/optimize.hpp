#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace graphpde::detail {

using Vec = std::vector<double>;

struct Objective {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

double inf_norm(const Vec& v);
double dot(const Vec& a, const Vec& b);
Vec axpy(const Vec& x, double s, const Vec& d);

/// Central-difference Hessian of the gradient, symmetrized.
Eigen::MatrixXd fd_hessian(const std::function<Vec(const Vec&)>& gradient, const Vec& x);

/// Newton direction -H^{-1} g with Levenberg shifts until H + mu I is
/// positive definite. Returns false if no descent direction was found.
bool newton_direction(const Eigen::MatrixXd& h, const Vec& g, Vec& out);

struct MinimizeOptions {
  double grad_tol = 1e-10;
  int max_iterations = 500;
  double armijo = 1e-4;
  double shrink = 0.5;
  bool newton = true;
};

struct MinimizeResult {
  Vec x;
  double value = 0.0;
  Vec gradient;
  double grad_inf = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Damped Newton with an Armijo backtracking line search, falling back to
/// steepest descent when the Newton direction is unusable.
MinimizeResult minimize(const Objective& obj, Vec x0, const MinimizeOptions& options);

}  // namespace graphpde::detail
