#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include <graphpde/problem.hpp>

namespace graphpde {

/// A parsed problem file. Format, one `key = value` per line, `#` comments:
///
///   graph = path3.graph        (relative to the problem file)
///   omega = 0 1
///   kind = YamabeWellPosed
///   m = 1   p = 2   q = 1   lambda = 0.5
///   coef a = const 1           (constant on Omega)
///   coef b = 0:1 1:2           (per-vertex values)
///   param c = 0.25             (scalar usable in expressions)
///   f_expr = a - b*powsgn(t, q)
///   g_expr = t^3
///   h = const 0                (boundary data, same value syntax as coef)
///   seed = 7
///   tol.gradient = 1e-10   tol.residual = 1e-8   tol.newton = 1e-12
///   tol.uniqueness = 1e-6  max_iterations = 0    random_starts = 8
///   monotone_range = 10
///
/// Expressions see the variable t, every coefficient, every param and the
/// scalars p, q, lambda, m.
struct ProblemFile {
  std::filesystem::path path;
  std::filesystem::path graph_path;
  ProblemSpec spec;
  std::map<std::string, VertexFunction> coefficients;
  std::map<std::string, double> parameters;
  std::string f_expr;
  std::string g_expr;
  bool has_seed = false;
};

/// Throws Error(ParseError) with "path:line: message", or the graph/domain
/// errors of the referenced files.
ProblemFile load_problem(const std::filesystem::path& path);
ProblemFile parse_problem(std::istream& in, const std::filesystem::path& path);

}  // namespace graphpde
