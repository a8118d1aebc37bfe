#include <gtest/gtest.h>

#include <sstream>

#include <graphpde/error.hpp>
#include <graphpde/graph.hpp>
#include <graphpde/graph_io.hpp>

#include "fixtures.hpp"

using namespace graphpde;
using graphpde::testing::path_graph;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Graph, PathIsValid) {
  const auto g = path_graph(3);
  EXPECT_EQ(g->vertex_count(), 3u);
  EXPECT_EQ(g->edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g->weight(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g->weight(0, 2), 0.0);
}

TEST(Graph, RejectsBadEdges) {
  const std::vector<RawEdge> conflicting{{0, 1, 1.0}, {1, 0, 2.0}};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(conflicting); }), ErrorCode::ConflictingWeight);
  const std::vector<RawEdge> loop{{0, 0, 1.0}};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(loop); }), ErrorCode::SelfLoop);
  const std::vector<RawEdge> negative{{0, 1, -1.0}};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(negative); }), ErrorCode::NonpositiveWeight);
  const std::vector<RawEdge> one{{0, 1, 1.0}};
  const std::vector<VertexId> declared{5};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(one, declared); }), ErrorCode::IsolatedVertex);
}

TEST(Graph, SymmetricDuplicateIsAccepted) {
  const std::vector<RawEdge> both{{0, 1, 1.5}, {1, 0, 1.5}};
  const auto g = WeightedGraph::from_edges(both);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.measure(0), 1.5);
}

TEST(Graph, Measure) {
  const auto g = path_graph(3);
  EXPECT_DOUBLE_EQ(vertex_measure(*g, 1), 2.0);
  EXPECT_DOUBLE_EQ(vertex_measure(*g, 0), 1.0);
  const std::vector<RawEdge> star{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  EXPECT_DOUBLE_EQ(vertex_measure(WeightedGraph::from_edges(star), 0), 3.0);
  EXPECT_EQ(code_of([&] { vertex_measure(*g, 9); }), ErrorCode::UnknownVertex);
}

TEST(Graph, Distance) {
  const auto g = path_graph(3);
  EXPECT_EQ(graph_distance(*g, 0, 2), 2u);
  EXPECT_EQ(graph_distance(*g, 1, 1), 0u);
  const std::vector<RawEdge> two{{0, 1, 1}, {2, 3, 1}};
  EXPECT_FALSE(graph_distance(WeightedGraph::from_edges(two), 0, 3).has_value());
}

TEST(Domain, BoundaryAndInterior) {
  const std::vector<VertexId> o3{0, 1};
  const Domain d(path_graph(3), o3);
  EXPECT_EQ(d.boundary_ids(), std::vector<VertexId>{1});
  EXPECT_EQ(d.interior_ids(), std::vector<VertexId>{0});

  const std::vector<VertexId> o4{0, 1, 2};
  const Domain d4(path_graph(4), o4);
  EXPECT_EQ(d4.boundary_ids(), std::vector<VertexId>{2});
  EXPECT_EQ(d4.interior_ids(), (std::vector<VertexId>{0, 1}));

  const std::vector<VertexId> all{0, 1, 2};
  const Domain whole(path_graph(3), all);
  EXPECT_TRUE(whole.boundary().empty());
  EXPECT_EQ(code_of([&] { whole.require_solvable(); }), ErrorCode::EmptyBoundary);
  const std::vector<VertexId> none;
  EXPECT_EQ(code_of([&] { Domain(path_graph(3), none); }), ErrorCode::EmptyOmega);
}

TEST(Domain, Disconnected) {
  const std::vector<VertexId> omega{0, 2};
  const Domain d(path_graph(3), omega);
  EXPECT_FALSE(d.connected());
  EXPECT_EQ(code_of([&] { Domain(path_graph(3), omega, {.disconnected_is_error = true}); }),
            ErrorCode::DisconnectedOmega);
}

TEST(Integrate, HandSums) {
  const auto g = path_graph(3);
  const std::vector<VertexId> omega{0, 1};
  EXPECT_DOUBLE_EQ(integrate(*g, omega, VertexFunction{{0, 1.0}, {1, 1.0}}), 3.0);
  EXPECT_DOUBLE_EQ(integrate(*g, omega, VertexFunction{{0, 0.0}, {1, 0.0}}), 0.0);
  EXPECT_DOUBLE_EQ(integrate(*g, omega, VertexFunction{{0, 2.0}, {1, -1.0}}), 0.0);
  EXPECT_EQ(code_of([&] { integrate(*g, omega, VertexFunction{{0, 2.0}}); }), ErrorCode::MissingValue);
}

TEST(ZeroExtend, Definition) {
  const auto d = graphpde::testing::path3_domain();
  const auto u = zero_extend(d, VertexFunction{{0, 1.0}, {1, 0.0}});
  EXPECT_EQ(u, (VertexFunction{{0, 1.0}, {1, 0.0}, {2, 0.0}}));
  const std::vector<VertexId> all{0, 1, 2};
  const Domain whole(path_graph(3), all);
  const VertexFunction v{{0, 1.0}, {1, 2.0}, {2, 3.0}};
  EXPECT_EQ(zero_extend(whole, v), v);
}

TEST(GraphIo, ParsesAndReportsLines) {
  std::istringstream ok("# comment\nv 7\ne 0 1 1.5\ne 1 7 2\n");
  const auto g = io::parse_graph(ok);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_DOUBLE_EQ(g.measure(g.index_of(1)), 3.5);

  std::istringstream bad("e 0 1 x\n");
  try {
    io::parse_graph(bad, "g.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("g.txt:1"), std::string::npos);
  }
  EXPECT_EQ(io::parse_omega_line("omega 3 1 2 # tail"), (std::vector<VertexId>{3, 1, 2}));
}
