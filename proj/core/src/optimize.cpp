#include "optimize.hpp"

#include <algorithm>
#include <cmath>

namespace graphpde::detail {

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec axpy(const Vec& x, double s, const Vec& d) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + s * d[i];
  return out;
}

Eigen::MatrixXd fd_hessian(const std::function<Vec(const Vec&)>& gradient, const Vec& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd h(n, n);
  Vec xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double step = 1e-5 * std::max(1.0, std::abs(x[ui]));
    xp[ui] = x[ui] + step;
    const Vec gp = gradient(xp);
    xp[ui] = x[ui] - step;
    const Vec gm = gradient(xp);
    xp[ui] = x[ui];
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      h(j, i) = (gp[uj] - gm[uj]) / (2.0 * step);
    }
  }
  return 0.5 * (h + h.transpose());
}

bool newton_direction(const Eigen::MatrixXd& h, const Vec& g, Vec& out) {
  const auto n = h.rows();
  if (n == 0) return false;
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = -g[static_cast<std::size_t>(i)];
  if (!h.allFinite()) return false;
  const double scale = std::max(1e-300, h.cwiseAbs().maxCoeff());
  double mu = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(h + mu * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd d = llt.solve(rhs);
      if (d.allFinite()) {
        out.assign(d.data(), d.data() + n);
        if (dot(out, g) < 0.0) return true;
      }
    }
    mu = mu == 0.0 ? 1e-10 * scale : mu * 10.0;
  }
  return false;
}

MinimizeResult minimize(const Objective& obj, Vec x0, const MinimizeOptions& options) {
  MinimizeResult r;
  r.x = std::move(x0);
  r.value = obj.value(r.x);
  r.trace.push_back(r.value);
  double gd_step = 1.0;
  for (;;) {
    r.gradient = obj.gradient(r.x);
    r.grad_inf = inf_norm(r.gradient);
    if (r.grad_inf <= options.grad_tol) {
      r.converged = true;
      return r;
    }
    if (r.iterations >= options.max_iterations) return r;
    ++r.iterations;

    Vec d;
    bool newton = options.newton && newton_direction(fd_hessian(obj.gradient, r.x), r.gradient, d);
    if (!newton) {
      d = r.gradient;
      for (double& v : d) v = -v;
    }
    const double slope = dot(r.gradient, d);

    double step = newton ? 1.0 : gd_step;
    bool accepted = false;
    if (newton) {
      // Energy differences below rounding: judge the full step by the gradient.
      const Vec trial = axpy(r.x, 1.0, d);
      const double v = obj.value(trial);
      if (std::isfinite(v) && std::abs(v - r.value) <= 1e-13 * (1.0 + std::abs(r.value)) &&
          inf_norm(obj.gradient(trial)) <= 0.5 * r.grad_inf) {
        r.x = trial;
        r.value = std::min(v, r.value);
        accepted = true;
      }
    }
    for (int k = 0; k < 80 && !accepted; ++k) {
      const Vec trial = axpy(r.x, step, d);
      const double v = obj.value(trial);
      if (std::isfinite(v) && v <= r.value + options.armijo * step * slope) {
        r.x = trial;
        r.value = v;
        accepted = true;
        break;
      }
      step *= options.shrink;
    }
    if (!newton && accepted) gd_step = std::min(1e6, 2.0 * step);

    if (!accepted) {
      // Near the optimum the energy differences are below rounding; accept a
      // full step only if it clearly reduces the gradient without raising the
      // value beyond rounding.
      const Vec trial = axpy(r.x, newton ? 1.0 : gd_step, d);
      const double v = obj.value(trial);
      const Vec gt = obj.gradient(trial);
      if (std::isfinite(v) && v <= r.value + 1e-14 * (1.0 + std::abs(r.value)) &&
          inf_norm(gt) <= 0.5 * r.grad_inf) {
        r.x = trial;
        r.value = v;
      } else {
        r.gradient = obj.gradient(r.x);
        r.grad_inf = inf_norm(r.gradient);
        r.converged = r.grad_inf <= options.grad_tol;
        return r;
      }
    }
    r.trace.push_back(r.value);
  }
}

}  // namespace graphpde::detail
