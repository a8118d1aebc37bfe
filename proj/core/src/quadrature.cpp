#include <graphpde/quadrature.hpp>

#include <cmath>
#include <limits>

#include <graphpde/error.hpp>

namespace graphpde::quad {

namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double finite_or_throw(double v, double t) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::QuadratureFailure,
                "integrand is not finite at t = " + std::to_string(t));
  }
  return v;
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              int level) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = finite_or_throw(f(lm), lm);
  const double frm = finite_or_throw(f(rm), rm);
  const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
  const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
  const double delta = left + right - p.whole;

  // Below this the two estimates differ only by rounding.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(left) + std::abs(right));
  if (level >= 3 && std::abs(delta) <= 15.0 * std::max(tol, floor)) return left + right + delta / 15.0;
  if (depth <= 0) {
    throw Error(ErrorCode::QuadratureFailure,
                "adaptive Simpson did not reach tolerance on [" + std::to_string(p.a) + ", " +
                    std::to_string(p.b) + "]");
  }
  return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth - 1, level + 1) +
         refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth - 1, level + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_simpson(f, b, a, options);
  const double m = 0.5 * (a + b);
  const double fa = finite_or_throw(f(a), a);
  const double fm = finite_or_throw(f(m), m);
  const double fb = finite_or_throw(f(b), b);
  return refine(f, {a, fa, m, fm, b, fb, simpson(a, fa, fm, b, fb)}, options.abs_tol,
                options.max_depth, 0);
}

}  // namespace graphpde::quad
