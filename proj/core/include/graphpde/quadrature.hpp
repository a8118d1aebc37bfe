#pragma once

#include <functional>

namespace graphpde::quad {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 48;
};

/// Adaptive Simpson rule on [a, b] (a > b allowed, with the usual sign).
/// Throws QuadratureFailure when the recursion exhausts its depth budget or
/// the integrand is not finite.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {});

}  // namespace graphpde::quad
