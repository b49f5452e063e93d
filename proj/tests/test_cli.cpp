#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qd/report.hpp"

using namespace qd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(QD_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("qdefect_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

class GoldenSkeletal : public testing::TestWithParam<std::string> {};

TEST_P(GoldenSkeletal, ByteMatchesShippedReport) {
  auto model = GetParam();
  auto out = scratch() / ("skeletal-" + model + ".json");
  auto r = run("skeletal " + model + " --N 2,3,4 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto golden = fs::path(QD_SOURCE_DIR) / "tests" / "golden" / ("skeletal-" + model + ".json");
  ASSERT_TRUE(fs::exists(golden));
  EXPECT_EQ(slurp(out), slurp(golden));
}

INSTANTIATE_TEST_SUITE_P(Models, GoldenSkeletal,
                         testing::Values("trivial-paramagnet", "levin-gu", "set-toric-code"));

TEST(Cli, SkeletalPrintsTheTables) {
  auto lg = run("skeletal levin-gu");
  EXPECT_EQ(lg.code, 0);
  EXPECT_NE(lg.out.find("F(g,g,g) = -1"), std::string::npos) << lg.out;
  auto set = run("skeletal set-toric-code --N 2,3,4");
  EXPECT_EQ(set.code, 0);
  EXPECT_NE(set.out.find("eta(g,g)_psi^sigma = -1"), std::string::npos);
  EXPECT_NE(set.out.find("-Zv(0,0)"), std::string::npos);
}

TEST(Cli, SkeletalJsonContent) {
  auto out = scratch() / "set.json";
  ASSERT_EQ(run("skeletal set-toric-code --out " + out.string()).code, 0);
  auto j = load(out);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["fusion"][4][4], "m");
  EXPECT_EQ(j["braiding"][6][1], "-Zv(0,0)");
  EXPECT_EQ(j["eta"][1][1][1], 4);
  EXPECT_EQ(j["status"], "pass");
  for (auto& c : j["checks"]) EXPECT_NE(c["status"], "fail") << c["name"];
}

TEST(Cli, VerifyLevinGuWindow) {
  auto out = scratch() / "lg.json";
  auto r = run("verify levin-gu --window 10 --margin 3 --out " + out.string());
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = load(out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["environment"]["window"], "10x10");
  EXPECT_GE(j["checks"].size(), 7u);
}

TEST(Cli, VerifySetAndParamagnet) {
  EXPECT_EQ(run("verify set-toric-code --window 8").code, 0);
  auto p = run("verify trivial-paramagnet");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("skipped  entangler"), std::string::npos);
}

TEST(Cli, VerifyTorusGroundSpace) {
  auto r = run("verify set-toric-code --torus 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("dimension 4"), std::string::npos);
  EXPECT_NE(r.out.find("pass  pizza-expectation"), std::string::npos);
}

TEST(Cli, DeterministicAcrossJobs) {
  auto a = scratch() / "a.json", b = scratch() / "b.json";
  ASSERT_EQ(run("verify set-toric-code --window 7 --seed 5 --jobs 1 --out " + a.string()).code, 0);
  ASSERT_EQ(run("verify set-toric-code --window 7 --seed 5 --jobs 4 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  auto j = load(a);
  std::vector<std::string> names;
  for (auto& c : j["checks"]) names.push_back(c["name"]);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify nope").code, 2);
  EXPECT_EQ(run("verify levin-gu --window 3x").code, 2);
  EXPECT_EQ(run("verify levin-gu --window 4 --torus 3").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("skeletal toric-code-ancilla").code, 2);
  EXPECT_EQ(run("skeletal set-toric-code --N 2,x").code, 2);
  EXPECT_EQ(run("qca spread " + (scratch() / "missing.txt").string()).code, 2);
  // Nothing fits in a 3x3 window, so the local suites have no instances.
  EXPECT_EQ(run("verify levin-gu --window 3").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, QcaSpread) {
  auto out = scratch() / "spread.json";
  auto r = run("qca spread builtin:levin-gu-entangler --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = load(out);
  EXPECT_EQ(j["results"]["bound"], 21);
  EXPECT_EQ(j["results"]["empirical"], 1);
}

TEST(Cli, QcaSplitErasureLine) {
  auto out = scratch() / "split.json";
  ASSERT_EQ(run("qca split builtin:set-erasure-line --cut 0 --out " + out.string()).code, 0);
  auto j = load(out);
  EXPECT_EQ(j["results"]["xi_gates"], 0);
  EXPECT_GT(j["results"]["upper_gates"].get<int>(), 0);
  EXPECT_GT(j["results"]["lower_gates"].get<int>(), 0);
}

TEST(Cli, QcaFactorizeCone) {
  auto r = run("qca factorize builtin:levin-gu-entangler --cone 90@origin");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("pass  recomposition"), std::string::npos);
  EXPECT_EQ(run("qca factorize builtin:levin-gu-entangler --cone 90@origin --margin 5").code, 2);
  EXPECT_EQ(run("qca factorize builtin:levin-gu-entangler --cone 200@origin").code, 2);
}

TEST(Cli, CircuitFileParseErrorsNameTheLine) {
  auto f = scratch() / "bad.circ";
  std::ofstream(f) << "layer\ngate rot:Xv(0,0)\ngate bogus\n";
  auto r = run("qca spread " + f.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST(Cli, ConfigFileWithFlagOverride) {
  auto cfg = scratch() / "verify.toml";
  std::ofstream(cfg) << "[verify]\nmodel = \"set-toric-code\"\nwindow = \"8\"\nmargin = 1\n";
  auto a = scratch() / "cfg.json";
  auto r = run("--config " + cfg.string() + " verify --margin 2 --out " + a.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = load(a);
  EXPECT_EQ(j["model"], "set-toric-code");
  EXPECT_EQ(j["environment"]["window"], "8x8");
  EXPECT_EQ(j["environment"]["margin"], 2);
}

TEST(Cli, MarkdownRendering) {
  auto md = scratch() / "r.md";
  ASSERT_EQ(run("skeletal set-toric-code --md " + md.string()).code, 0);
  auto text = slurp(md);
  EXPECT_NE(text.find("## Braiding"), std::string::npos);
  EXPECT_NE(text.find("| pentagon | pass |"), std::string::npos);
}

TEST(Report, ParseHelpers) {
  EXPECT_EQ(parse_extent("10"), std::make_pair(10, 10));
  EXPECT_EQ(parse_extent("4x3"), std::make_pair(4, 3));
  EXPECT_THROW(parse_extent("0"), std::invalid_argument);
  EXPECT_THROW(parse_extent("4y3"), std::invalid_argument);
  EXPECT_EQ(parse_int_list("2,3,4"), (std::vector<int>{2, 3, 4}));
  EXPECT_THROW(parse_int_list("2,,3"), std::invalid_argument);
  auto c = parse_cone("60@1.5,-2");
  EXPECT_NEAR(c.angle, M_PI / 3, 1e-12);
  EXPECT_EQ(c.apex.x, 1.5);
  EXPECT_EQ(c.apex.y, -2);
  EXPECT_THROW(parse_cone("90"), std::invalid_argument);
}

TEST(Report, FailedCheckMakesTheReportFail) {
  CheckReport r;
  r.checks = {Check{"b", "", "pass", "", 1}, Check{"a", "", "skipped", "", 0}};
  EXPECT_TRUE(r.ok());
  r.checks.push_back(Check{"c", "", "fail", "x", 1});
  EXPECT_FALSE(r.ok());
  auto j = to_json(r);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["checks"][0]["name"], "a");
  EXPECT_EQ(j["summary"]["fail"], 1);
}
