#include <graphpde/problem_file.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

#include <graphpde/expression.hpp>
#include <graphpde/graph_io.hpp>
#include <graphpde/solvers.hpp>

namespace graphpde {

namespace {

struct Line {
  int number = 0;
  std::string value;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Parser {
 public:
  explicit Parser(std::filesystem::path path) : path_(std::move(path)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw Error(ErrorCode::ParseError, path_.string() + ":" + std::to_string(line) + ": " + msg);
  }

  double number(const Line& l) const { return number(l.value, l.number); }

  double number(std::string_view text, int line) const {
    const std::string s = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      fail(line, "expected a number, got '" + s + "'");
    }
    return v;
  }

  long long integer(const Line& l) const {
    const std::string s = trim(l.value);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      fail(l.number, "expected an integer, got '" + s + "'");
    }
    return v;
  }

  // `const v` over `fallback`, or `id:v id:v ...`.
  VertexFunction values(const Line& l, std::span<const VertexId> fallback) const {
    std::istringstream in(l.value);
    std::string tok;
    in >> tok;
    if (tok == "const") {
      std::string v;
      if (!(in >> v)) fail(l.number, "'const' needs a value");
      std::string rest;
      if (in >> rest) fail(l.number, "unexpected '" + rest + "' after constant");
      return VertexFunction::constant(fallback, number(v, l.number));
    }
    VertexFunction f;
    for (bool first = true; first || (in >> tok); first = false) {
      if (tok.empty()) break;
      const auto colon = tok.find(':');
      if (colon == std::string::npos) fail(l.number, "expected id:value, got '" + tok + "'");
      const std::string id_text = tok.substr(0, colon);
      VertexId id = 0;
      const auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
      if (id_text.empty() || ec != std::errc() || ptr != id_text.data() + id_text.size()) {
        fail(l.number, "bad vertex id '" + id_text + "'");
      }
      if (f.contains(id)) fail(l.number, "vertex " + id_text + " given twice");
      f.set(id, number(std::string_view(tok).substr(colon + 1), l.number));
    }
    return f;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

ProblemFile parse_problem(std::istream& in, const std::filesystem::path& path) {
  const Parser ps(path);
  std::map<std::string, Line> keys;
  std::map<std::string, Line> coef_lines;
  std::vector<std::pair<std::string, Line>> param_lines;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view view(raw);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const std::string text = trim(view);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) ps.fail(lineno, "expected 'key = value'");
    const std::string lhs = trim(std::string_view(text).substr(0, eq));
    const Line value{lineno, trim(std::string_view(text).substr(eq + 1))};
    if (value.value.empty()) ps.fail(lineno, "empty value for '" + lhs + "'");

    if (lhs.starts_with("coef ") || lhs.starts_with("param ")) {
      const bool coef = lhs.starts_with("coef ");
      const std::string name = trim(std::string_view(lhs).substr(coef ? 5 : 6));
      if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
        ps.fail(lineno, "bad name '" + name + "'");
      }
      if (name == "t" || name == "p" || name == "q" || name == "lambda" || name == "m") {
        ps.fail(lineno, "'" + name + "' is reserved");
      }
      const bool dup = coef_lines.contains(name) ||
                       std::any_of(param_lines.begin(), param_lines.end(),
                                   [&](const auto& pl) { return pl.first == name; });
      if (dup) ps.fail(lineno, "'" + name + "' defined twice");
      if (coef) {
        coef_lines.emplace(name, value);
      } else {
        param_lines.emplace_back(name, value);
      }
      continue;
    }
    if (!keys.emplace(lhs, value).second) ps.fail(lineno, "duplicate key '" + lhs + "'");
  }

  static const std::vector<std::string> known{
      "graph", "omega", "kind", "m", "p", "q", "lambda", "f_expr", "g_expr", "h", "seed",
      "tol.gradient", "tol.residual", "tol.boundary", "tol.newton", "tol.uniqueness",
      "max_iterations", "newton_max_iterations", "random_starts", "monotone_range"};
  for (const auto& [k, l] : keys) {
    if (std::find(known.begin(), known.end(), k) == known.end()) ps.fail(l.number, "unknown key '" + k + "'");
  }
  auto require = [&](const char* key) -> const Line& {
    const auto it = keys.find(key);
    if (it == keys.end()) ps.fail(lineno, std::string("missing required key '") + key + "'");
    return it->second;
  };

  // Graph and domain.
  const Line& graph_line = require("graph");
  std::filesystem::path graph_path = graph_line.value;
  if (graph_path.is_relative()) graph_path = path.parent_path() / graph_path;
  auto graph = std::make_shared<const WeightedGraph>(io::read_graph(graph_path));
  const Line& omega_line = require("omega");
  std::vector<VertexId> omega;
  try {
    omega = io::parse_omega_line("omega " + omega_line.value);
  } catch (const Error& e) {
    ps.fail(omega_line.number, e.what());
  }
  Domain domain(graph, omega);

  const Line& kind_line = require("kind");
  const auto kind = parse_problem_kind(kind_line.value);
  if (!kind) ps.fail(kind_line.number, "unknown kind '" + kind_line.value + "'");

  ProblemFile pf{path, graph_path, ProblemSpec(domain, *kind), {}, {}, {}, {}, false};
  ProblemSpec& s = pf.spec;
  const auto omega_ids = domain.omega_ids();

  if (const auto it = keys.find("m"); it != keys.end()) {
    const long long m = ps.integer(it->second);
    if (m < 1 || m > 16) ps.fail(it->second.number, "m must be in [1, 16]");
    s.m = static_cast<int>(m);
  }
  if (const auto it = keys.find("p"); it != keys.end()) s.p = ps.number(it->second);
  if (const auto it = keys.find("q"); it != keys.end()) s.q = ps.number(it->second);
  if (const auto it = keys.find("lambda"); it != keys.end()) s.lambda = ps.number(it->second);
  if (const auto it = keys.find("seed"); it != keys.end()) {
    s.seed = static_cast<std::uint64_t>(ps.integer(it->second));
    pf.has_seed = true;
  }
  SolverOptions& o = s.options;
  if (const auto it = keys.find("tol.gradient"); it != keys.end()) o.gradient_tol = ps.number(it->second);
  if (const auto it = keys.find("tol.residual"); it != keys.end()) o.residual_tol = ps.number(it->second);
  if (const auto it = keys.find("tol.boundary"); it != keys.end()) o.boundary_tol = ps.number(it->second);
  if (const auto it = keys.find("tol.newton"); it != keys.end()) o.newton_tol = ps.number(it->second);
  if (const auto it = keys.find("tol.uniqueness"); it != keys.end()) o.uniqueness_tol = ps.number(it->second);
  if (const auto it = keys.find("max_iterations"); it != keys.end()) o.max_iterations = static_cast<int>(ps.integer(it->second));
  if (const auto it = keys.find("newton_max_iterations"); it != keys.end()) o.newton_max_iterations = static_cast<int>(ps.integer(it->second));
  if (const auto it = keys.find("random_starts"); it != keys.end()) o.random_starts = static_cast<int>(ps.integer(it->second));
  if (const auto it = keys.find("monotone_range"); it != keys.end()) o.monotone_range = ps.number(it->second);

  // Coefficients must cover Omega, except boundary-only data.
  for (const auto& [name, l] : coef_lines) {
    VertexFunction f = ps.values(l, omega_ids);
    for (VertexId x : f.vertices()) {
      if (!graph->find(x)) ps.fail(l.number, "coefficient '" + name + "' names unknown vertex " + std::to_string(x));
    }
    for (VertexId x : omega_ids) {
      if (!f.contains(x)) ps.fail(l.number, "coefficient '" + name + "' has no value at vertex " + std::to_string(x));
    }
    pf.coefficients.emplace(name, std::move(f));
  }
  for (const auto& [name, l] : param_lines) pf.parameters.emplace(name, ps.number(l));
  if (const auto it = keys.find("h"); it != keys.end()) {
    const auto boundary = domain.boundary_ids();
    s.h = ps.values(it->second, boundary);
    for (VertexId x : boundary) {
      if (!s.h.contains(x)) ps.fail(it->second.number, "h has no value at boundary vertex " + std::to_string(x));
    }
  }

  expr::SymbolTable symbols;
  for (const auto& [name, f] : pf.coefficients) symbols.add_coefficient(name);
  for (const auto& [name, v] : pf.parameters) symbols.add_parameter(name, v);
  symbols.add_parameter("p", s.p);
  symbols.add_parameter("q", s.q);
  symbols.add_parameter("lambda", s.lambda);
  symbols.add_parameter("m", s.m);

  auto expression = [&](const char* key) -> std::optional<Nonlinearity> {
    const auto it = keys.find(key);
    if (it == keys.end()) return std::nullopt;
    try {
      return Nonlinearity::expression(*graph, expr::Expression::parse(it->second.value, symbols), symbols,
                                      pf.coefficients);
    } catch (const Error& e) {
      ps.fail(it->second.number, std::string(key) + ": " + e.what());
    }
  };
  auto coefficient = [&](const char* name, bool required) -> VertexFunction {
    const auto it = pf.coefficients.find(name);
    if (it != pf.coefficients.end()) return it->second;
    if (required) ps.fail(kind_line.number, std::string("kind ") + kind_line.value + " needs 'coef " + name + "'");
    return {};
  };
  auto forbid = [&](const char* key) {
    if (const auto it = keys.find(key); it != keys.end()) {
      ps.fail(it->second.number, std::string("'") + key + "' is not used by kind " + kind_line.value);
    }
  };

  switch (s.kind) {
    case ProblemKind::YamabeMP: {
      forbid("g_expr");
      forbid("h");
      s.a = coefficient("a", true);
      s.b = coefficient("b", true);
      if (auto f = expression("f_expr")) {
        s.nonlinearity = std::move(*f);
        // Growth data from the declared bound |f| <= a + b|t|^q.
        s.nonlinearity.set_growth({s.q, s.a, s.b});
      } else {
        s.nonlinearity = Nonlinearity::power(*graph, s.a, s.b, s.q, -1.0);
      }
      break;
    }
    case ProblemKind::SemilinearDirichlet: {
      forbid("f_expr");
      auto g = expression("g_expr");
      if (!g) ps.fail(kind_line.number, "kind SemilinearDirichlet needs 'g_expr'");
      s.nonlinearity = std::move(*g);
      s.f = coefficient("f", false);
      break;
    }
    case ProblemKind::YamabeWellPosed:
      forbid("f_expr");
      forbid("g_expr");
      forbid("h");
      s.a = coefficient("a", true);
      s.b = coefficient("b", true);
      break;
    case ProblemKind::KazdanWarner:
      forbid("f_expr");
      forbid("g_expr");
      s.alpha = coefficient("alpha", true);
      s.beta = coefficient("beta", true);
      s.f = coefficient("f", false);
      break;
    case ProblemKind::SmallDataLaplace: {
      forbid("f_expr");
      forbid("h");
      auto g = expression("g_expr");
      if (!g) ps.fail(kind_line.number, "kind SmallDataLaplace needs 'g_expr'");
      s.nonlinearity = std::move(*g);
      s.f = coefficient("f", false);
      break;
    }
  }
  pf.f_expr = keys.contains("f_expr") ? keys.at("f_expr").value : std::string();
  pf.g_expr = keys.contains("g_expr") ? keys.at("g_expr").value : std::string();
  return pf;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  return parse_problem(in, path);
}

}  // namespace graphpde
