#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using graphpde::cli::run_command;

namespace {

const fs::path kData = GRAPHPDE_TEST_DATA;
const fs::path kGolden = GRAPHPDE_TEST_GOLDEN;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Set GRAPHPDE_UPDATE_GOLDEN=1 to rewrite the expected files.
void expect_golden(const std::string& actual, const char* name) {
  const fs::path path = kGolden / name;
  if (std::getenv("GRAPHPDE_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << path;
  EXPECT_EQ(actual, slurp(path)) << name;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("GRAPHPDE_SEED"); }
  void TearDown() override { unsetenv("GRAPHPDE_SEED"); }
};

}  // namespace

TEST_F(Cli, ValidatePath) {
  const auto r = run({"validate", data("path3.graph"), "--omega", "0", "1"});
  EXPECT_EQ(r.code, 0);
  expect_golden(r.out, "validate_path3.txt");
  EXPECT_NE(r.out.find("boundary 1\ninterior 0\n"), std::string::npos);
}

TEST_F(Cli, ValidateConflictingWeight) {
  const auto r = run({"validate", data("conflicting.graph")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ConflictingWeight"), std::string::npos);
}

TEST_F(Cli, ValidateDisconnectedDomain) {
  const auto r = run({"validate", data("path3.graph"), "--omega", "0", "2"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, SolveWellPosed) {
  const auto r = run({"solve", data("wellposed.problem")});
  EXPECT_EQ(r.code, 0);
  expect_golden(r.out, "solve_wellposed.jsonl");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "Converged");
  EXPECT_NEAR(j["solution"]["0"].get<double>(), 0.5, 1e-9);
  EXPECT_NE(r.err.find("status Converged"), std::string::npos);
}

TEST_F(Cli, SolveWritesOutFile) {
  const fs::path out = fs::temp_directory_path() / "graphpde_cli_solve.jsonl";
  const auto r = run({"solve", data("small_data.problem"), "--out", out.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("status Converged"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_NEAR(j["solution"]["0"].get<double>(), 0.099028852405478957, 1e-12);
  fs::remove(out);
}

TEST_F(Cli, SolveExitCodes) {
  EXPECT_EQ(run({"solve", data("yamabe_bad_q.problem")}).code, 1);
  const auto bad = run({"solve", data("bad_expression.problem")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("bad_expression.problem:4"), std::string::npos);
  EXPECT_EQ(run({"solve", data("missing.problem")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(Cli, Threshold) {
  const auto r = run({"threshold", data("yamabe_mp.problem"), "--samples", "5"});
  EXPECT_EQ(r.code, 0);
  expect_golden(r.out, "threshold_yamabe_mp.txt");
  EXPECT_NE(r.out.find("# Lambda 0.33333333333333331\n"), std::string::npos);
  EXPECT_NE(r.out.find("rho,lambda_rho\n"), std::string::npos);
}

TEST_F(Cli, SobolevConstant) {
  const auto r = run({"sobolev-constant", data("path3.graph"), "--omega", "0", "1", "--m", "1", "--p", "2",
                      "--q", "inf"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C 1\n"), std::string::npos);
}

TEST_F(Cli, VerifySuites) {
  for (const char* suite : {"oscillation", "h", "sign", "oracle"}) {
    const auto r = run({"verify", data("grid_h.problem"), "--suite", suite, "--n", "3", "--seed", "5"});
    EXPECT_EQ(r.code, 0) << suite << r.err;
    expect_golden(r.out, (std::string("verify_") + suite + ".jsonl").c_str());
  }
  EXPECT_EQ(run({"verify", data("grid_h.problem"), "--suite", "nope"}).code, 2);
}

TEST_F(Cli, Oracle) {
  const auto r = run({"oracle", data("grid_h.problem")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);  // interior of the 3 x 3 block
}

TEST_F(Cli, Deterministic) {
  for (const char* problem : {"yamabe_mp.problem", "kazdan_warner.problem", "wellposed.problem"}) {
    EXPECT_EQ(run({"solve", data(problem)}).out, run({"solve", data(problem)}).out);
  }
  const std::vector<std::string> v{"verify", data("grid_h.problem"), "--suite", "oscillation", "--n", "4"};
  EXPECT_EQ(run(v).out, run(v).out);
}

TEST_F(Cli, SeedFromEnvironment) {
  const std::vector<std::string> v{"verify", data("grid_h.problem"), "--suite", "sign", "--n", "2"};
  const auto from_file = run(v);
  setenv("GRAPHPDE_SEED", "21", 1);
  EXPECT_EQ(run(v).out, from_file.out);  // the file says seed = 21
  setenv("GRAPHPDE_SEED", "22", 1);
  EXPECT_NE(run(v).out, from_file.out);
  setenv("GRAPHPDE_SEED", "x", 1);
  EXPECT_EQ(run(v).code, 2);
}
