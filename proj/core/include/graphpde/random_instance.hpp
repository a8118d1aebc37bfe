#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <graphpde/problem.hpp>

namespace graphpde {

struct InstanceBounds {
  int min_vertices = 4;
  int max_vertices = 10;
  int max_extra_edges = 4;
  int max_order = 1;                       // m drawn from [1, max_order]
  std::vector<double> p_choices{2.0, 3.0};
  double lambda_fraction = 0.9;            // YamabeMP: lambda = fraction * Lambda
};

/// Random connected graph: a random tree plus extra edges, weights uniform
/// in [0.5, 2].
WeightedGraph random_graph(std::mt19937_64& rng, const InstanceBounds& bounds);

/// Random connected Omega with nonempty boundary and interior (grown from a
/// random vertex). Throws DegenerateDomain after bounded retries.
Domain random_domain(std::mt19937_64& rng, std::shared_ptr<const WeightedGraph> g);

/// Random data of the given kind on a fixed domain. Coefficient ranges:
///   YamabeMP             a, b ~ U[0.5, 1.5], q in {p-1, p}, f = a - b powsgn(t, q)
///   SemilinearDirichlet  g = c powsgn(t, r), c ~ U[0.5, 2], r in {1, 2, 3};
///                        f ~ U[-2, 2], h ~ U[-1, 1]
///   YamabeWellPosed      a ~ U[0, 2], b ~ U[0.5, 1.5], q in {p-1, p}
///   KazdanWarner         alpha, beta ~ U[0, 1], f ~ U[0, 3], h ~ U[-0.5, 0.5]
///   SmallDataLaplace     g = c t^3, c ~ U[0.5, 2], f ~ U[-0.2, 0.2], p = 2
ProblemSpec random_data(std::mt19937_64& rng, const Domain& d, ProblemKind kind,
                        const InstanceBounds& bounds = {});

/// Deterministic generator: identical seeds give identical specs. Draws
/// whose admissible space is trivial are regenerated.
ProblemSpec random_instance(std::uint64_t seed, const InstanceBounds& bounds, ProblemKind kind);

/// Uniform draws on a vertex set.
VertexFunction random_function(std::mt19937_64& rng, std::span<const VertexId> vertices, double lo,
                               double hi);

}  // namespace graphpde
