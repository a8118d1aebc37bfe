#include <graphpde/graph_io.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace graphpde::io {

namespace {

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::string_view source, std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line_no << ": " << what;
  throw Error(ErrorCode::ParseError, os.str());
}

VertexId parse_id(std::string_view tok, std::string_view source, std::size_t line_no) {
  VertexId v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
    fail(source, line_no, "invalid vertex identifier '" + std::string(tok) + "'");
  }
  return v;
}

double parse_weight(std::string_view tok, std::string_view source, std::size_t line_no) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(source, line_no, "invalid weight '" + std::string(tok) + "'");
  }
  return w;
}

}  // namespace

WeightedGraph parse_graph(std::istream& in, std::string_view source_name) {
  std::vector<RawEdge> edges;
  std::vector<VertexId> declared;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(strip_comment(line));
    if (tokens.empty()) continue;
    if (tokens[0] == "v") {
      if (tokens.size() != 2) fail(source_name, line_no, "expected 'v <id>'");
      declared.push_back(parse_id(tokens[1], source_name, line_no));
    } else if (tokens[0] == "e") {
      if (tokens.size() != 4) fail(source_name, line_no, "expected 'e <id> <id> <weight>'");
      edges.push_back({parse_id(tokens[1], source_name, line_no),
                       parse_id(tokens[2], source_name, line_no),
                       parse_weight(tokens[3], source_name, line_no)});
    } else {
      fail(source_name, line_no, "unknown record '" + std::string(tokens[0]) + "'");
    }
  }
  return WeightedGraph::from_edges(edges, declared);
}

WeightedGraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open graph file " + path.string());
  return parse_graph(in, path.string());
}

std::vector<VertexId> parse_omega_line(std::string_view line) {
  const auto tokens = split_ws(strip_comment(line));
  if (tokens.empty() || tokens[0] != "omega") {
    throw Error(ErrorCode::ParseError, "expected 'omega <id> <id> ...'");
  }
  std::vector<VertexId> ids;
  for (std::size_t i = 1; i < tokens.size(); ++i) ids.push_back(parse_id(tokens[i], "omega", 1));
  if (ids.empty()) throw Error(ErrorCode::EmptyOmega, "omega line lists no vertex");
  return ids;
}

std::vector<VertexId> read_omega(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open domain file " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (split_ws(strip_comment(line)).empty()) continue;
    return parse_omega_line(line);
  }
  throw Error(ErrorCode::ParseError, "domain file " + path.string() + " has no omega line");
}

}  // namespace graphpde::io
