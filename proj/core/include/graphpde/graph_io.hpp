#pragma once

#include <filesystem>
#include <istream>
#include <string_view>
#include <vector>

#include <graphpde/graph.hpp>

namespace graphpde::io {

/// Graph text format, one record per line:
///   v <id>                 declare a vertex
///   e <id> <id> <weight>   declare an edge (weight is a decimal float)
/// `#` starts a comment. Blank lines are ignored.
WeightedGraph parse_graph(std::istream& in, std::string_view source_name = "<stream>");
WeightedGraph read_graph(const std::filesystem::path& path);

/// Domain line: `omega <id> <id> ...`. Anything after `#` is ignored.
std::vector<VertexId> parse_omega_line(std::string_view line);
std::vector<VertexId> read_omega(const std::filesystem::path& path);

}  // namespace graphpde::io
