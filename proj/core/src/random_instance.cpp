#include <graphpde/random_instance.hpp>

#include <algorithm>
#include <optional>
#include <set>

#include <graphpde/admissible_space.hpp>
#include <graphpde/solvers.hpp>

namespace graphpde {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(items.size()) - 1))];
}

}  // namespace

VertexFunction random_function(std::mt19937_64& rng, std::span<const VertexId> vertices, double lo,
                               double hi) {
  VertexFunction f;
  for (VertexId x : vertices) f.set(x, uniform(rng, lo, hi));
  return f;
}

WeightedGraph random_graph(std::mt19937_64& rng, const InstanceBounds& bounds) {
  const int n = uniform_int(rng, std::max(3, bounds.min_vertices), std::max(3, bounds.max_vertices));
  std::vector<RawEdge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (int v = 1; v < n; ++v) {
    const int parent = uniform_int(rng, 0, v - 1);
    edges.push_back({parent, v, uniform(rng, 0.5, 2.0)});
    seen.insert({parent, v});
  }
  const int extra = uniform_int(rng, 0, bounds.max_extra_edges);
  for (int k = 0; k < extra; ++k) {
    int a = uniform_int(rng, 0, n - 1);
    int b = uniform_int(rng, 0, n - 1);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    edges.push_back({a, b, uniform(rng, 0.5, 2.0)});
  }
  return WeightedGraph::from_edges(edges);
}

Domain random_domain(std::mt19937_64& rng, std::shared_ptr<const WeightedGraph> g) {
  const int n = static_cast<int>(g->vertex_count());
  for (int attempt = 0; attempt < 50; ++attempt) {
    const int target = uniform_int(rng, 2, std::max(2, n - 1));
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<Index> members{static_cast<Index>(uniform_int(rng, 0, n - 1))};
    in[members.front()] = 1;
    while (static_cast<int>(members.size()) < target) {
      std::vector<Index> frontier;
      for (Index x : members) {
        for (const Neighbor& nb : g->neighbors(x)) {
          if (!in[nb.index]) frontier.push_back(nb.index);
        }
      }
      if (frontier.empty()) break;
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
      const Index next = pick(rng, frontier);
      in[next] = 1;
      members.push_back(next);
    }
    std::vector<VertexId> omega;
    for (Index x : members) omega.push_back(g->id(x));
    Domain d(g, omega);
    if (!d.interior().empty() && !d.boundary().empty()) return d;
  }
  throw Error(ErrorCode::DegenerateDomain, "could not draw a domain with boundary and interior");
}

ProblemSpec random_data(std::mt19937_64& rng, const Domain& d, ProblemKind kind,
                        const InstanceBounds& bounds) {
  const WeightedGraph& g = d.graph();
  const auto omega = d.omega_ids();
  const auto interior = d.interior_ids();
  const auto boundary = d.boundary_ids();
  const double p = pick(rng, bounds.p_choices);

  switch (kind) {
    case ProblemKind::YamabeMP: {
      const int m = uniform_int(rng, 1, std::max(1, bounds.max_order));
      const double q = uniform_int(rng, 0, 1) == 0 ? p - 1.0 : p;
      const auto a = random_function(rng, omega, 0.5, 1.5);
      const auto b = random_function(rng, omega, 0.5, 1.5);
      ProblemSpec s = make_yamabe_mp(d, m, p, q, 0.0, a, b);
      s.seed = rng();
      if (bounds.lambda_fraction > 0.0) {
        const auto th = yamabe_threshold(s);
        s.lambda = bounds.lambda_fraction * th.threshold.Lambda;
      }
      return s;
    }
    case ProblemKind::SemilinearDirichlet: {
      const double c = uniform(rng, 0.5, 2.0);
      const double r = static_cast<double>(uniform_int(rng, 1, 3));
      const auto zero = VertexFunction::constant(omega, 0.0);
      const auto cs = VertexFunction::constant(omega, c);
      ProblemSpec s = make_semilinear_dirichlet(d, p, Nonlinearity::power(g, zero, cs, r, +1.0),
                                                random_function(rng, interior, -2.0, 2.0),
                                                random_function(rng, boundary, -1.0, 1.0));
      s.seed = rng();
      return s;
    }
    case ProblemKind::YamabeWellPosed: {
      const double q = uniform_int(rng, 0, 1) == 0 ? p - 1.0 : p;
      ProblemSpec s = make_yamabe_wellposed(d, p, q, random_function(rng, omega, 0.0, 2.0),
                                            random_function(rng, omega, 0.5, 1.5));
      s.seed = rng();
      return s;
    }
    case ProblemKind::KazdanWarner: {
      ProblemSpec s = make_kazdan_warner(d, p, random_function(rng, omega, 0.0, 1.0),
                                         random_function(rng, omega, 0.0, 1.0),
                                         random_function(rng, interior, 0.0, 3.0),
                                         random_function(rng, boundary, -0.5, 0.5));
      s.seed = rng();
      return s;
    }
    case ProblemKind::SmallDataLaplace: {
      const double c = uniform(rng, 0.5, 2.0);
      const auto zero = VertexFunction::constant(omega, 0.0);
      const auto cs = VertexFunction::constant(omega, c);
      ProblemSpec s = make_small_data(d, Nonlinearity::power(g, zero, cs, 3.0, +1.0),
                                      random_function(rng, interior, -0.2, 0.2));
      s.seed = rng();
      return s;
    }
  }
  throw Error(ErrorCode::InvalidParameters, "unknown problem kind");
}

ProblemSpec random_instance(std::uint64_t seed, const InstanceBounds& bounds, ProblemKind kind) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto g = std::make_shared<const WeightedGraph>(random_graph(rng, bounds));
    std::optional<Domain> drawn;
    try {
      drawn.emplace(random_domain(rng, g));
    } catch (const Error&) {
      continue;
    }
    Domain d = std::move(*drawn);
    if (bounds.max_order > 1) {
      const calculus::OperatorContext ctx(d);
      bool ok = true;
      for (int m = 2; m <= bounds.max_order && ok; ++m) ok = AdmissibleSpace(ctx, m).dimension() > 0;
      if (!ok) continue;
    }
    return random_data(rng, d, kind, bounds);
  }
  throw Error(ErrorCode::DegenerateDomain, "no admissible random instance after 100 draws");
}

}  // namespace graphpde
