#pragma once

#include <memory>
#include <random>
#include <vector>

#include <graphpde/graph.hpp>

namespace graphpde::bench {

// n x n grid with unit weights; Omega drops the last row, so the boundary is
// row n - 2.
inline Domain grid_domain(int n) {
  std::vector<RawEdge> edges;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const VertexId v = r * n + c;
      if (c + 1 < n) edges.push_back({v, v + 1, 1.0});
      if (r + 1 < n) edges.push_back({v, v + n, 1.0});
    }
  }
  auto g = std::make_shared<const WeightedGraph>(WeightedGraph::from_edges(edges));
  std::vector<VertexId> omega;
  for (VertexId v = 0; v < (n - 1) * n; ++v) omega.push_back(v);
  return Domain(g, omega);
}

inline std::vector<double> random_field(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> out(n);
  for (double& x : out) x = u(rng);
  return out;
}

}  // namespace graphpde::bench
