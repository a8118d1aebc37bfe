#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <graphpde/error.hpp>

namespace graphpde {

/// External vertex identifier (nonnegative).
using VertexId = std::int64_t;
/// Dense position of a vertex inside a WeightedGraph, ascending in VertexId.
using Index = std::size_t;

struct RawEdge {
  VertexId from = 0;
  VertexId to = 0;
  double weight = 0.0;
};

struct Neighbor {
  Index index = 0;
  double weight = 0.0;
};

/// Finite, symmetric, positively weighted graph without self-loops or
/// isolated vertices. Immutable after construction. Vertices and neighbor
/// lists are stored in ascending identifier order so every traversal is
/// deterministic.
class WeightedGraph {
 public:
  /// Builds and validates a graph. An edge given once is mirrored; an edge
  /// given in both directions must carry the same weight. `declared` lists
  /// vertices that must exist even if no edge mentions them (they then fail
  /// the isolated-vertex check).
  static WeightedGraph from_edges(std::span<const RawEdge> edges,
                                  std::span<const VertexId> declared = {});

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const VertexId> vertices() const noexcept { return ids_; }
  VertexId id(Index i) const { return ids_.at(i); }
  std::optional<Index> find(VertexId id) const;
  /// Throws UnknownVertex.
  Index index_of(VertexId id) const;

  std::span<const Neighbor> neighbors(Index i) const {
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  /// w(x,y); zero when x and y are not adjacent.
  double weight(Index x, Index y) const;
  /// m(x) = sum_y w(x,y).
  double measure(Index x) const { return measure_[x]; }
  std::span<const double> measures() const noexcept { return measure_; }
  /// Sum of w over undirected edges, each counted once.
  double total_edge_weight() const noexcept { return total_edge_weight_; }

 private:
  std::vector<VertexId> ids_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> measure_;
  double total_edge_weight_ = 0.0;
};

/// validate_graph: the checked constructor, spelled as a free function.
inline WeightedGraph validate_graph(std::span<const RawEdge> raw_edges) {
  return WeightedGraph::from_edges(raw_edges);
}

/// m(x) for an identifier; throws UnknownVertex.
double vertex_measure(const WeightedGraph& g, VertexId x);

/// Edge-count distance by breadth-first search; nullopt when unreachable.
std::optional<std::size_t> graph_distance(const WeightedGraph& g, VertexId x, VertexId y);

/// Real values on a finite set of vertices, kept sorted by identifier.
class VertexFunction {
 public:
  VertexFunction() = default;
  VertexFunction(std::initializer_list<std::pair<VertexId, double>> entries);
  VertexFunction(std::span<const VertexId> vertices, std::span<const double> values);

  static VertexFunction constant(std::span<const VertexId> vertices, double value);

  /// Inserts or overwrites; non-finite values are rejected.
  void set(VertexId x, double value);
  std::optional<double> find(VertexId x) const;
  /// Throws MissingValue.
  double at(VertexId x) const;
  bool contains(VertexId x) const { return find(x).has_value(); }

  std::span<const VertexId> vertices() const noexcept { return ids_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

 private:
  std::vector<VertexId> ids_;
  std::vector<double> values_;
};

struct DomainOptions {
  /// Connectivity of the induced subgraph is a warning unless this is set.
  bool disconnected_is_error = false;
};

/// A vertex subset Omega with its vertex boundary (points of Omega with a
/// neighbor outside Omega) and vertex interior (the rest).
class Domain {
 public:
  Domain(std::shared_ptr<const WeightedGraph> graph, std::span<const VertexId> omega,
         DomainOptions options = {});

  const WeightedGraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const WeightedGraph>& graph_ptr() const noexcept { return graph_; }

  std::span<const Index> omega() const noexcept { return omega_; }
  std::span<const Index> boundary() const noexcept { return boundary_; }
  std::span<const Index> interior() const noexcept { return interior_; }

  bool contains(Index x) const { return membership_[x] != 0; }
  bool is_interior(Index x) const { return membership_[x] == 2; }
  bool is_boundary(Index x) const { return membership_[x] == 1; }
  /// Whether Omega induces a connected subgraph.
  bool connected() const noexcept { return connected_; }

  std::vector<VertexId> omega_ids() const;
  std::vector<VertexId> boundary_ids() const;
  std::vector<VertexId> interior_ids() const;

  /// Throws EmptyInterior or EmptyBoundary when the solver hypotheses fail.
  void require_solvable() const;

  /// Dense vector over all vertices of the graph: u on Omega, zero elsewhere.
  /// Throws MissingValue if u lacks a vertex of Omega.
  std::vector<double> to_field(const VertexFunction& u) const;
  /// Restriction of a dense field to Omega.
  VertexFunction from_field(std::span<const double> field) const;

 private:
  std::shared_ptr<const WeightedGraph> graph_;
  std::vector<Index> omega_;
  std::vector<Index> boundary_;
  std::vector<Index> interior_;
  std::vector<unsigned char> membership_;  // 0 outside, 1 boundary, 2 interior
  bool connected_ = true;
};

Domain make_domain(std::shared_ptr<const WeightedGraph> g, std::span<const VertexId> omega,
                   DomainOptions options = {});
Domain make_domain(const WeightedGraph& g, std::span<const VertexId> omega,
                   DomainOptions options = {});

/// sum_{x in omega} u(x) m(x). Throws MissingValue or UnknownVertex.
double integrate(const WeightedGraph& g, std::span<const VertexId> omega, const VertexFunction& u);

/// Integral over Omega of a dense field, generic in the scalar so it can run
/// in exact rational arithmetic.
template <class Scalar>
Scalar integrate_field(const Domain& d, std::span<const Scalar> field) {
  Scalar sum(0);
  for (Index x : d.omega()) sum += field[x] * Scalar(d.graph().measure(x));
  return sum;
}

/// u on Omega, zero on the rest of V.
VertexFunction zero_extend(const Domain& d, const VertexFunction& u);

}  // namespace graphpde
