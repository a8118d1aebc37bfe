#include "json_lines.hpp"

#include <cmath>

#include <graphpde/expression.hpp>

namespace graphpde::cli {

namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        write(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? expr::format_double(v) : "null";
      break;
    }
    default: out += j.dump(); break;
  }
}

}  // namespace

std::string dump_line(const Json& j) {
  std::string out;
  write(j, out);
  return out;
}

Json to_json(const VertexFunction& u) {
  Json j = Json::object();
  for (std::size_t i = 0; i < u.size(); ++i) j[std::to_string(u.vertices()[i])] = u.values()[i];
  return j;
}

Json report_json(const ProblemSpec& spec, const SolveReport& r) {
  Json j;
  j["kind"] = std::string(to_string(spec.kind));
  j["status"] = std::string(to_string(r.status));
  j["message"] = r.message;
  j["seed"] = spec.seed;
  j["residual_inf"] = r.residual_inf;
  j["boundary_ok"] = r.boundary_ok;
  j["iterations"] = r.iterations;
  j["solution"] = to_json(r.solution);
  j["solution_inf"] = r.solution_inf;
  j["energy_final"] = r.energy_final;
  if (spec.kind == ProblemKind::YamabeMP) {
    j["interior"] = r.interior_flag;
    j["lambda"] = r.lambda_used;
    j["Lambda"] = r.Lambda;
    j["rho"] = r.rho_used;
    j["sobolev_C"] = r.sobolev_C;
    j["theorem_guarantee"] = r.theorem_guarantee;
  }
  if (spec.kind == ProblemKind::YamabeWellPosed || spec.kind == ProblemKind::KazdanWarner) {
    j["uniqueness_gap"] = r.uniqueness_gap;
  }
  if (spec.kind == ProblemKind::SmallDataLaplace) {
    j["residual_history"] = r.residual_history;
    j["residual_ratios"] = r.residual_ratios;
  }
  j["energy_trace"] = r.energy_trace;
  return j;
}

Json check_json(const CheckResult& c) {
  Json j;
  j["check"] = c.name;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["tolerance"] = c.tolerance;
  j["passed"] = c.passed;
  j["context"] = c.context;
  if (!c.details.empty()) {
    Json d = Json::object();
    for (const auto& [k, v] : c.details) d[k] = v;
    j["details"] = std::move(d);
  }
  return j;
}

}  // namespace graphpde::cli
