#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include <graphpde/graph.hpp>

namespace graphpde::testing {

inline std::shared_ptr<const WeightedGraph> path_graph(int n, double w = 1.0) {
  std::vector<RawEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return std::make_shared<const WeightedGraph>(WeightedGraph::from_edges(edges));
}

// Path 0-1-2 with Omega = {0, 1}: boundary {1}, interior {0}.
inline Domain path3_domain() {
  const std::vector<VertexId> omega{0, 1};
  return Domain(path_graph(3), omega);
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-15) {
  double flo = f(lo);
  for (int i = 0; i < 400 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Maximizer of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         int iterations = 300) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline double central_difference(const std::function<double(double)>& f, double t, double h = 1e-6) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace graphpde::testing
