#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include <graphpde/expression.hpp>
#include <graphpde/graph_io.hpp>
#include <graphpde/oracle.hpp>
#include <graphpde/problem_file.hpp>
#include <graphpde/solvers.hpp>
#include <graphpde/variational.hpp>
#include <graphpde/verify_suite.hpp>

#include "json_lines.hpp"

namespace graphpde::cli {

namespace {

using expr::format_double;

// Bad input detected by a command after parsing succeeded.
struct InputError {
  std::string message;
};

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("GRAPHPDE_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view s(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError{"GRAPHPDE_SEED is not an unsigned integer: '" + std::string(s) + "'"};
  }
  return v;
}

ProblemFile load(const std::string& path) {
  ProblemFile pf = load_problem(path);
  if (const auto s = env_seed()) pf.spec.seed = *s;
  return pf;
}

Domain load_domain(const std::string& graph_path, const std::vector<VertexId>& omega,
                   const std::string& omega_file) {
  auto g = std::make_shared<const WeightedGraph>(io::read_graph(graph_path));
  std::vector<VertexId> ids = omega;
  if (!omega_file.empty()) {
    if (!ids.empty()) throw InputError{"give either --omega or --omega-file, not both"};
    ids = io::read_omega(omega_file);
  }
  if (ids.empty()) throw InputError{"a domain is required (--omega or --omega-file)"};
  return Domain(std::move(g), ids);
}

std::string join(const std::vector<VertexId>& ids) {
  std::string s;
  for (VertexId x : ids) {
    if (!s.empty()) s += ' ';
    s += std::to_string(x);
  }
  return s;
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return calculus::kInfinity;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError{"expected a number or 'inf', got '" + text + "'"};
  }
  return v;
}

// Lines go to --out when given, else to stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError{"cannot write " + path};
      stream_ = file_.get();
    }
  }
  void line(const Json& j) { *stream_ << dump_line(j) << '\n'; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string graph;
  std::vector<VertexId> omega;
  std::string omega_file;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = io::read_graph(a.graph);
  out << "vertices " << g.vertex_count() << '\n';
  out << "edges " << g.edge_count() << '\n';
  out << "measure\n";
  for (Index x = 0; x < g.vertex_count(); ++x) {
    out << "  " << g.id(x) << ' ' << format_double(g.measure(x)) << '\n';
  }
  if (a.omega.empty() && a.omega_file.empty()) return kExitOk;

  const Domain d = load_domain(a.graph, a.omega, a.omega_file);
  out << "omega " << join(d.omega_ids()) << '\n';
  out << "boundary " << join(d.boundary_ids()) << '\n';
  out << "interior " << join(d.interior_ids()) << '\n';
  int code = kExitOk;
  if (!d.connected()) {
    err << "warning: omega does not induce a connected subgraph\n";
    code = kExitFailed;
  }
  if (d.interior().empty()) {
    err << "warning: omega has no interior vertex\n";
    code = kExitFailed;
  }
  if (d.boundary().empty()) {
    err << "warning: omega has no boundary vertex\n";
    code = kExitFailed;
  }
  return code;
}

// ---------------------------------------------------------------------------

int cmd_solve(const std::string& path, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const ProblemFile pf = load(path);
  Sink sink(out_path, out);
  const SolveReport r = solve(pf.spec);
  sink.line(report_json(pf.spec, r));
  // Human summary next to the records: stdout when they go to a file.
  std::ostream& text = sink.to_file() ? out : err;
  text << "status " << to_string(r.status) << '\n';
  text << "residual " << format_double(r.residual_inf) << '\n';
  if (!r.message.empty()) text << "message " << r.message << '\n';
  return r.status == SolveStatus::Converged ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

int cmd_threshold(const std::string& path, int samples, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load(path);
  const ProblemSpec& s = pf.spec;
  if (s.a.empty() || s.b.empty()) throw InputError{"threshold needs coefficients a and b"};
  const YamabeThreshold t = yamabe_threshold(s);
  out << "# C " << format_double(t.C) << '\n';
  out << "# norm_a " << format_double(t.normA) << '\n';
  out << "# norm_b " << format_double(t.normB) << '\n';
  if (!t.available) {
    err << "threshold unavailable: ||a||_1 or ||b||_1 vanishes\n";
    return kExitFailed;
  }
  const double rho_star = t.threshold.rho_star;
  out << "# rho_star " << (std::isinf(rho_star) ? std::string("inf") : format_double(rho_star)) << '\n';
  out << "# Lambda " << format_double(t.threshold.Lambda) << '\n';
  out << "rho,lambda_rho\n";
  const double center = std::isinf(rho_star) ? 1.0 : rho_star;
  const double lo = std::log(center * 1e-2);
  const double hi = std::log(center * (std::isinf(rho_star) ? 1e4 : 1e2));
  for (int i = 0; i < samples; ++i) {
    const double rho = std::exp(lo + (hi - lo) * i / std::max(1, samples - 1));
    out << format_double(rho) << ','
        << format_double(lambda_rho(rho, s.p, s.q, t.C, t.normA, t.normB)) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SobolevArgs {
  ValidateArgs domain;
  int m = 1;
  double p = 2.0;
  std::string q = "inf";
  int samples = 1000;
  std::uint64_t seed = 1;
};

int cmd_sobolev(const SobolevArgs& a, std::ostream& out) {
  const Domain d = load_domain(a.domain.graph, a.domain.omega, a.domain.omega_file);
  const double q = parse_exponent(a.q);
  const SobolevResult r = sobolev_constant_detailed(d, a.m, a.p, q);
  const double oracle = oracle_sobolev_constant(d, a.m, a.p, q, a.samples, a.seed);
  out << "C " << format_double(r.constant) << '\n';
  out << "certified " << (r.lower_bound ? "lower_bound" : "exact") << '\n';
  out << "oracle_lower_bound " << format_double(oracle) << '\n';
  return oracle <= r.constant + 1e-9 * std::max(1.0, r.constant) ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string problem;
  std::string suite;
  int n = 10;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto suite = parse_suite(a.suite);
  if (!suite) throw InputError{"unknown suite '" + a.suite + "'"};
  if (a.n < 1) throw InputError{"--n must be positive"};
  const ProblemFile pf = load(a.problem);
  const std::uint64_t seed = a.seed.value_or(pf.spec.seed);
  pf.spec.domain.require_solvable();
  Sink sink(a.out, out);
  int passed = 0, total = 0;
  for (int i = 0; i < a.n; ++i) {
    const std::uint64_t s = instance_seed(seed, static_cast<std::uint64_t>(i));
    for (const CheckResult& c : run_suite_instance(*suite, pf.spec.domain, pf.spec.p, s)) {
      Json j;
      j["suite"] = std::string(to_string(*suite));
      j["instance"] = i;
      j["seed"] = s;
      j.update(check_json(c));
      sink.line(j);
      ++total;
      passed += c.passed ? 1 : 0;
    }
  }
  err << "suite " << to_string(*suite) << ": " << passed << '/' << total << " passed\n";
  return passed == total ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

int cmd_oracle(const std::string& path, std::ostream& out) {
  const ProblemFile pf = load(path);
  const ProblemSpec& s = pf.spec;
  const Domain& d = s.domain;
  const calculus::OperatorContext ctx(d);
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> u(d.graph().vertex_count(), 0.0);
  for (Index x : d.omega()) u[x] = unif(rng);

  bool ok = true;
  for (Index x : d.interior()) {
    const auto mine = calculus::mp_laplacian_field(ctx, u, s.m, s.p, x);
    const double ref = oracle_mp_laplacian_field(ctx, u, s.m, s.p, x);
    const double gap = std::abs(mine.value - ref);
    const double tol = 1e-11 * std::max({1.0, std::abs(mine.value), std::abs(ref)});
    Json j;
    j["check"] = "oracle_mp_laplacian";
    j["vertex"] = d.graph().id(x);
    j["m"] = s.m;
    j["p"] = s.p;
    j["calculus"] = mine.value;
    j["oracle"] = ref;
    j["abs_diff"] = gap;
    j["tolerance"] = tol;
    j["admissible_test_function"] = mine.test_function_admissible;
    j["passed"] = gap <= tol;
    ok = ok && gap <= tol;
    out << dump_line(j) << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete (m,p)-Laplacian problems on weighted graphs", "graphpde"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check a graph file and optionally a domain");
  v->add_option("graph", validate.graph, "graph file")->required();
  v->add_option("--omega", validate.omega, "vertex ids of Omega");
  v->add_option("--omega-file", validate.omega_file, "file with an omega line");

  std::string solve_path, solve_out;
  auto* so = app.add_subcommand("solve", "Solve the problem described by a problem file");
  so->add_option("problem", solve_path, "problem file")->required();
  so->add_option("--out", solve_out, "write the JSON-lines report here");

  std::string threshold_path;
  int threshold_samples = 32;
  auto* th = app.add_subcommand("threshold", "Sobolev constant, threshold and lambda_rho curve");
  th->add_option("problem", threshold_path, "problem file")->required();
  th->add_option("--samples", threshold_samples, "curve samples")->check(CLI::PositiveNumber);

  SobolevArgs sob;
  auto* sc = app.add_subcommand("sobolev-constant", "Best Sobolev embedding constant");
  sc->add_option("graph", sob.domain.graph, "graph file")->required();
  sc->add_option("--omega", sob.domain.omega, "vertex ids of Omega");
  sc->add_option("--omega-file", sob.domain.omega_file, "file with an omega line");
  sc->add_option("--m", sob.m, "order")->check(CLI::Range(1, 16));
  sc->add_option("--p", sob.p, "exponent p");
  sc->add_option("--q", sob.q, "exponent q (number or inf)");
  sc->add_option("--samples", sob.samples, "oracle samples")->check(CLI::PositiveNumber);
  sc->add_option("--seed", sob.seed, "oracle seed");

  VerifyArgs ver;
  auto* ve = app.add_subcommand("verify", "Randomized inequality and oracle suites");
  ve->add_option("problem", ver.problem, "problem file (domain and p)")->required();
  ve->add_option("--suite", ver.suite, "oscillation, h, sign or oracle")->required();
  ve->add_option("--n", ver.n, "instances");
  ve->add_option("--seed", ver.seed, "base seed (default: the file's seed)");
  ve->add_option("--out", ver.out, "write JSON lines here");

  std::string oracle_path;
  auto* orc = app.add_subcommand("oracle", "Compare operators against literal summation");
  orc->add_option("problem", oracle_path, "problem file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*v) return cmd_validate(validate, out, err);
    if (*so) return cmd_solve(solve_path, solve_out, out, err);
    if (*th) return cmd_threshold(threshold_path, threshold_samples, out, err);
    if (*sc) return cmd_sobolev(sob, out);
    if (*ve) return cmd_verify(ver, out, err);
    if (*orc) return cmd_oracle(oracle_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.message << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace graphpde::cli
