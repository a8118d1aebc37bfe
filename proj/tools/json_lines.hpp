#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include <graphpde/problem.hpp>
#include <graphpde/verify.hpp>

namespace graphpde::cli {

using Json = nlohmann::ordered_json;

/// One line, no trailing newline. Floats use 17 significant digits;
/// non-finite floats become null.
std::string dump_line(const Json& j);

/// {"<id>": value, ...} in vertex order.
Json to_json(const VertexFunction& u);

Json report_json(const ProblemSpec& spec, const SolveReport& r);
Json check_json(const CheckResult& c);

}  // namespace graphpde::cli
