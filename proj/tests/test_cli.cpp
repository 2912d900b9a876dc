#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "shadowlab/cli/app.hpp"

using namespace shadowlab;
using namespace shadowlab::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "shadowlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines_of(text))
    if (!l.empty() && l[0] != '#') out.push_back(l);
  return out;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("shadowlab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    put("identity2.json", R"({"points": ["a", "b"], "metric": [["0", "1"], ["1", "0"]], "map": [0, 1]})");
    put("bad.json",
        R"({"points": ["a", "b", "c"], "metric": [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]], "map": [0, 1, 2]})");
    put("broken.json", R"({"points": ["a", )");
    put("constant3.json",
        R"({"points": ["p", "q", "r"], "metric": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]], "map": [0, 0, 0]})");
    put("cycle3.json",
        R"({"points": ["x", "y", "z"], "metric": [["0", "1", "1"], ["1", "0", "1"], ["1", "1", "0"]], "map": [1, 2, 0]})");
    put("point.json", R"({"points": ["o"], "metric": [["0"]], "map": [0]})");
    put("collapse.json", R"({"domain": "cycle3.json", "codomain": "point.json", "phi": [0, 0, 0]})");
    put("not_factor.json", R"({"domain": "cycle3.json", "codomain": "identity2.json", "phi": [0, 1, 1]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void put(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

int run_binary(const std::string& args) {
  const char* bin = std::getenv("SHADOWLAB_CLI");
  if (!bin) return -1;
  const int status = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Csv, Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST_F(CliFiles, ValidateListsViolations) {
  const auto o = run_args({"validate", path("bad.json")});
  EXPECT_EQ(o.code, kExitInvalid);
  EXPECT_NE(o.out.find("d(a,c) > d(a,b) + d(b,c)"), std::string::npos);
  EXPECT_EQ(run_args({"validate", path("identity2.json")}).code, kExitOk);
}

TEST_F(CliFiles, DecideIdentityCounterexample) {
  const auto o = run_args({"decide", "shadowing", "--eps", "1/2", "--delta", "3/2", path("identity2.json"),
                           "--no-timing"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = data_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "system_id,property,eps,delta,verdict,witness_or_cex,states_explored,runtime_ms");
  EXPECT_EQ(rows[1].rfind("identity2,shadowing,1/2,3/2,false,cex:a b,", 0), 0u) << rows[1];
  EXPECT_EQ(rows[1].substr(rows[1].size() - 2), ",-");
}

TEST_F(CliFiles, SeedIsEchoed) {
  const auto o = run_args({"decide", "limit", path("point.json"), "--seed", "42"});
  EXPECT_NE(lines_of(o.out).front().find("seed=42"), std::string::npos);
}

TEST_F(CliFiles, EveryCertificateRevalidates) {
  for (const auto& [p, name] : kPropertyNames) {
    for (const char* sys : {"identity2.json", "constant3.json", "cycle3.json"}) {
      const auto o = run_args({"decide", std::string(name), path(sys), "--verify-certificates", "--horizon", "4"});
      if (p == Property::Inverse && std::string(sys) == "constant3.json") {
        EXPECT_EQ(o.code, kExitInput) << "inverse shadowing needs an onto map";
        continue;
      }
      ASSERT_EQ(o.code, kExitOk) << name << " " << sys << ": " << o.err;
      const auto rows = data_rows(o.out);
      ASSERT_GE(rows.size(), 2u);
      for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].substr(rows[i].size() - 3), ",ok") << rows[i];
    }
  }
}

TEST_F(CliFiles, PropertyScan) {
  const auto o = run_args({"property", "shadowing", path("identity2.json"), "--no-timing", "--verify-certificates"});
  ASSERT_EQ(o.code, kExitOk);
  const auto rows = data_rows(o.out);
  // Grid {1/2, 1, 3/2}: one row each, then the summary.
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1], "identity2,shadowing,1/2,1,true,invariant:2 states,4,-,ok");
  EXPECT_EQ(rows[4], "identity2,shadowing,*,*,true,level,10,-,-");
}

TEST_F(CliFiles, OracleReportsHorizon) {
  const auto o = run_args(
      {"oracle", "shadowing", path("identity2.json"), "--horizon", "4", "--eps", "1/2", "--delta", "3/2"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("cex:a b; horizon=4 required=3 certified"), std::string::npos);
  EXPECT_EQ(run_args({"oracle", "shadowing", path("identity2.json")}).code, kExitInput);
}

TEST_F(CliFiles, InduceRoundTrips) {
  for (std::vector<std::string> args : {std::vector<std::string>{"induce", "hyperspace"}, {"induce", "symmetric", "--n", "2"},
                                        {"induce", "product"}, {"induce", "tower", "--levels", "3"}}) {
    const std::string out = path("induced.json");
    args.insert(args.end(), {path("cycle3.json"), "-o", out});
    const auto o = run_args(args);
    ASSERT_EQ(o.code, kExitOk) << args[1] << ": " << o.err;
    EXPECT_EQ(run_args({"validate", out}).code, kExitOk);
    EXPECT_EQ(run_args({"decide", "shadowing", out, "--eps", "1", "--delta", "1", "--verify-certificates"}).code,
              kExitOk);
  }
  const FiniteMetricSystem h = load_system(path("induced.json"));
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(run_args({"induce", "hyperspace", path("cycle3.json"), "--hyperspace-cap", "2"}).code, kExitBudget);
  EXPECT_EQ(run_args({"induce", "cone", path("cycle3.json")}).code, kExitInput);
}

TEST_F(CliFiles, FactorCheck) {
  const auto o = run_args({"factor-check", "alp", path("collapse.json"), "--no-timing", "--verify-certificates"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = data_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0],
            "system_id,property,eps,delta,verdict,witness_or_cex,states_explored,runtime_ms,shadowing:forward,"
            "shadowing:converse,h-shadowing:forward,h-shadowing:converse,certificate");
  EXPECT_EQ(rows[1].rfind("collapse,alp,*,*,true,", 0), 0u);
  const auto fixed = run_args({"factor-check", "w1alp", path("collapse.json"), "--closeness", "1/2", "--up", "1/2",
                               "--down", "1/2", "--verify-certificates"});
  ASSERT_EQ(fixed.code, kExitOk) << fixed.err;
  EXPECT_NE(fixed.out.find(",ok\n"), std::string::npos);

  const auto bad = run_args({"factor-check", "alp", path("not_factor.json")});
  EXPECT_EQ(bad.code, kExitInvalid);
  EXPECT_NE(bad.err.find("but g(phi("), std::string::npos);
  EXPECT_EQ(run_args({"factor-check", "alp", path("collapse.json"), "--closeness", "1"}).code, kExitInput);
}

TEST_F(CliFiles, ExperimentTraceAndPlot) {
  const std::string plot = path("plot.csv");
  const auto o = run_args({"experiment", "tent-F3-shadowing", "--horizon", "20", "--emit-plot-data", plot,
                           "--verify-certificates"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = data_rows(o.out);
  ASSERT_EQ(rows.size(), 22u);
  EXPECT_EQ(rows[0], "step,state,defect,set_size");
  EXPECT_EQ(rows[1], "0,{0 1/48 2/3},0,2");
  EXPECT_EQ(rows[10].rfind("9,", 0), 0u);
  EXPECT_NE(o.out.find("# verdict: F_3 run: no eps-shadowing set; emptiness certificate at step 8"),
            std::string::npos);
  std::ifstream in(plot);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(lines_of(ss.str()).size(), 22u);
  EXPECT_EQ(lines_of(ss.str())[5], "4,0.020833333333");
}

TEST_F(CliFiles, ExperimentRejectsBadParameters) {
  EXPECT_EQ(run_args({"experiment", "rotation-hyper-orbital"}).code, kExitInput);
  EXPECT_EQ(run_args({"experiment", "no-such-example"}).code, kExitInput);
  EXPECT_EQ(run_args({"experiment", "tent-F3-shadowing", "--pattern-budget", "2"}).code, kExitBudget);
}

TEST_F(CliFiles, TableOnConstantMapPasses) {
  const auto o = run_args({"table", path("constant3.json"), "--no-timing"});
  ASSERT_EQ(o.code, kExitOk);
  for (const auto& r : data_rows(o.out)) EXPECT_EQ(r.find("VIOLATION"), std::string::npos);
  EXPECT_NE(o.out.find("violations=0"), std::string::npos);
}

TEST_F(CliFiles, ErrorTaxonomy) {
  EXPECT_EQ(run_args({"decide", "shadowing", path("broken.json"), "--eps", "1", "--delta", "1"}).code, kExitInput);
  EXPECT_EQ(run_args({"decide", "shadowing", path("bad.json"), "--eps", "1", "--delta", "1"}).code, kExitInvalid);
  EXPECT_EQ(run_args({"decide", "shadowing", path("missing.json"), "--eps", "1", "--delta", "1"}).code, kExitInput);
  EXPECT_EQ(run_args({"decide", "teleport", path("point.json")}).code, kExitInput);
  EXPECT_EQ(run_args({"decide", "shadowing", path("point.json"), "--eps", "2/4", "--delta", "1"}).code, kExitInput);
  EXPECT_EQ(run_args({"decide", "shadowing", path("point.json"), "--eps", "1"}).code, kExitInput);
  EXPECT_EQ(run_args({"decide", "shadowing", path("cycle3.json"), "--eps", "1/2", "--delta", "3/2", "--state-budget",
                      "1"})
                .code,
            kExitBudget);
  EXPECT_EQ(run_args({"decide"}).code, kExitInput);
  const auto help = run_args({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("system_id,property,eps,delta,verdict,witness_or_cex,states_explored,runtime_ms"),
            std::string::npos);
}

TEST_F(CliFiles, BinaryExitCodes) {
  if (!std::getenv("SHADOWLAB_CLI")) GTEST_SKIP() << "SHADOWLAB_CLI is not set";
  EXPECT_EQ(run_binary("validate " + path("identity2.json")), 0);
  EXPECT_EQ(run_binary("validate " + path("broken.json")), 2);
  EXPECT_EQ(run_binary("induce hyperspace " + path("cycle3.json") + " --hyperspace-cap 1"), 3);
  EXPECT_EQ(run_binary("validate " + path("bad.json")), 5);
}

TEST_F(CliFiles, DeterministicReports) {
  auto table = [&](const char* seed) {
    return run_args({"table", "--random", "6", "--seed", seed, "--no-timing"}).out;
  };
  EXPECT_EQ(table("7"), table("7"));
  EXPECT_NE(table("7"), table("8"));
  auto sweep = [&] { return run_args({"decide", "orbital", path("cycle3.json"), "--no-timing"}).out; };
  EXPECT_EQ(sweep(), sweep());
}
