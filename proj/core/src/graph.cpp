#include <graphpde/graph.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace graphpde {

namespace {

std::string edge_name(VertexId a, VertexId b) {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(std::span<const RawEdge> edges,
                                        std::span<const VertexId> declared) {
  if (edges.empty() && declared.empty()) {
    throw Error(ErrorCode::InvalidParameters, "graph has no edges");
  }

  std::map<std::pair<VertexId, VertexId>, double> canonical;
  std::vector<VertexId> ids(declared.begin(), declared.end());

  for (const RawEdge& e : edges) {
    if (e.from < 0 || e.to < 0) {
      throw Error(ErrorCode::InvalidParameters,
                  "negative vertex identifier in edge " + edge_name(e.from, e.to));
    }
    if (e.from == e.to) {
      throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.from));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonpositiveWeight,
                  "edge " + edge_name(e.from, e.to) + " has non-positive or non-finite weight");
    }
    const auto key = std::minmax(e.from, e.to);
    auto [it, inserted] = canonical.emplace(std::pair{key.first, key.second}, e.weight);
    if (!inserted && it->second != e.weight) {
      std::ostringstream os;
      os << "w" << edge_name(e.from, e.to) << " given as both " << it->second << " and "
         << e.weight;
      throw Error(ErrorCode::ConflictingWeight, os.str());
    }
    ids.push_back(e.from);
    ids.push_back(e.to);
  }

  for (VertexId v : declared) {
    if (v < 0) throw Error(ErrorCode::InvalidParameters, "negative vertex identifier");
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  WeightedGraph g;
  g.ids_ = std::move(ids);
  const std::size_t n = g.ids_.size();

  std::vector<std::vector<Neighbor>> lists(n);
  for (const auto& [key, w] : canonical) {
    const Index a = *g.find(key.first);
    const Index b = *g.find(key.second);
    lists[a].push_back({b, w});
    lists[b].push_back({a, w});
    g.total_edge_weight_ += w;
  }

  g.offsets_.assign(n + 1, 0);
  g.measure_.assign(n, 0.0);
  for (Index i = 0; i < n; ++i) {
    if (lists[i].empty()) {
      throw Error(ErrorCode::IsolatedVertex,
                  "vertex " + std::to_string(g.ids_[i]) + " has no incident edge");
    }
    std::sort(lists[i].begin(), lists[i].end(),
              [](const Neighbor& l, const Neighbor& r) { return l.index < r.index; });
    g.offsets_[i + 1] = g.offsets_[i] + lists[i].size();
    double m = 0.0;
    for (const Neighbor& nb : lists[i]) m += nb.weight;
    g.measure_[i] = m;
  }
  g.adjacency_.reserve(g.offsets_[n]);
  for (auto& l : lists) g.adjacency_.insert(g.adjacency_.end(), l.begin(), l.end());
  return g;
}

std::optional<Index> WeightedGraph::find(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - ids_.begin());
}

Index WeightedGraph::index_of(VertexId id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(id) + " is not in the graph");
}

double WeightedGraph::weight(Index x, Index y) const {
  auto nbrs = neighbors(x);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), y,
                             [](const Neighbor& n, Index v) { return n.index < v; });
  if (it == nbrs.end() || it->index != y) return 0.0;
  return it->weight;
}

double vertex_measure(const WeightedGraph& g, VertexId x) { return g.measure(g.index_of(x)); }

std::optional<std::size_t> graph_distance(const WeightedGraph& g, VertexId x, VertexId y) {
  const Index source = g.index_of(x);
  const Index target = g.index_of(y);
  if (source == target) return 0;
  std::vector<std::size_t> dist(g.vertex_count(), static_cast<std::size_t>(-1));
  std::deque<Index> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (dist[nb.index] != static_cast<std::size_t>(-1)) continue;
      dist[nb.index] = dist[v] + 1;
      if (nb.index == target) return dist[nb.index];
      queue.push_back(nb.index);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

VertexFunction::VertexFunction(std::initializer_list<std::pair<VertexId, double>> entries) {
  for (const auto& [x, v] : entries) set(x, v);
}

VertexFunction::VertexFunction(std::span<const VertexId> vertices, std::span<const double> values) {
  if (vertices.size() != values.size()) {
    throw Error(ErrorCode::InvalidParameters, "vertex/value count mismatch");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) set(vertices[i], values[i]);
}

VertexFunction VertexFunction::constant(std::span<const VertexId> vertices, double value) {
  VertexFunction f;
  for (VertexId x : vertices) f.set(x, value);
  return f;
}

void VertexFunction::set(VertexId x, double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidParameters,
                "non-finite value at vertex " + std::to_string(x));
  }
  auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
  const auto pos = it - ids_.begin();
  if (it != ids_.end() && *it == x) {
    values_[pos] = value;
    return;
  }
  ids_.insert(it, x);
  values_.insert(values_.begin() + pos, value);
}

std::optional<double> VertexFunction::find(VertexId x) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
  if (it == ids_.end() || *it != x) return std::nullopt;
  return values_[it - ids_.begin()];
}

double VertexFunction::at(VertexId x) const {
  if (auto v = find(x)) return *v;
  throw Error(ErrorCode::MissingValue, "no value at vertex " + std::to_string(x));
}

// ---------------------------------------------------------------------------

Domain::Domain(std::shared_ptr<const WeightedGraph> graph, std::span<const VertexId> omega,
               DomainOptions options)
    : graph_(std::move(graph)) {
  if (!graph_) throw Error(ErrorCode::InvalidParameters, "null graph");
  if (omega.empty()) throw Error(ErrorCode::EmptyOmega, "omega is empty");

  const WeightedGraph& g = *graph_;
  membership_.assign(g.vertex_count(), 0);
  for (VertexId id : omega) membership_[g.index_of(id)] = 2;

  for (Index x = 0; x < g.vertex_count(); ++x) {
    if (membership_[x] == 0) continue;
    omega_.push_back(x);
    const bool touches_exterior =
        std::any_of(g.neighbors(x).begin(), g.neighbors(x).end(),
                    [&](const Neighbor& nb) { return membership_[nb.index] == 0; });
    if (touches_exterior) {
      membership_[x] = 1;
      boundary_.push_back(x);
    } else {
      interior_.push_back(x);
    }
  }

  // Connectivity of the induced subgraph.
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<Index> queue{omega_.front()};
  seen[omega_.front()] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (membership_[nb.index] == 0 || seen[nb.index]) continue;
      seen[nb.index] = 1;
      ++reached;
      queue.push_back(nb.index);
    }
  }
  connected_ = reached == omega_.size();
  if (!connected_ && options.disconnected_is_error) {
    throw Error(ErrorCode::DisconnectedOmega, "omega does not induce a connected subgraph");
  }
}

namespace {
std::vector<VertexId> ids_of(const WeightedGraph& g, std::span<const Index> idx) {
  std::vector<VertexId> out;
  out.reserve(idx.size());
  for (Index i : idx) out.push_back(g.id(i));
  return out;
}
}  // namespace

std::vector<VertexId> Domain::omega_ids() const { return ids_of(*graph_, omega_); }
std::vector<VertexId> Domain::boundary_ids() const { return ids_of(*graph_, boundary_); }
std::vector<VertexId> Domain::interior_ids() const { return ids_of(*graph_, interior_); }

void Domain::require_solvable() const {
  if (interior_.empty()) throw Error(ErrorCode::EmptyInterior, "omega has no interior vertex");
  if (boundary_.empty()) throw Error(ErrorCode::EmptyBoundary, "omega has no boundary vertex");
}

std::vector<double> Domain::to_field(const VertexFunction& u) const {
  std::vector<double> field(graph_->vertex_count(), 0.0);
  for (Index x : omega_) field[x] = u.at(graph_->id(x));
  return field;
}

VertexFunction Domain::from_field(std::span<const double> field) const {
  VertexFunction u;
  for (Index x : omega_) u.set(graph_->id(x), field[x]);
  return u;
}

Domain make_domain(std::shared_ptr<const WeightedGraph> g, std::span<const VertexId> omega,
                   DomainOptions options) {
  return Domain(std::move(g), omega, options);
}

Domain make_domain(const WeightedGraph& g, std::span<const VertexId> omega, DomainOptions options) {
  return Domain(std::make_shared<const WeightedGraph>(g), omega, options);
}

double integrate(const WeightedGraph& g, std::span<const VertexId> omega, const VertexFunction& u) {
  double sum = 0.0;
  for (VertexId x : omega) sum += u.at(x) * g.measure(g.index_of(x));
  return sum;
}

VertexFunction zero_extend(const Domain& d, const VertexFunction& u) {
  const WeightedGraph& g = d.graph();
  VertexFunction out;
  for (Index x = 0; x < g.vertex_count(); ++x) {
    out.set(g.id(x), d.contains(x) ? u.at(g.id(x)) : 0.0);
  }
  return out;
}

}  // namespace graphpde
