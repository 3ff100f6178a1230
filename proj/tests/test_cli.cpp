#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"
#include "oracles.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(ACP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  CliRun r{-1, ""};
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST(Cli, Reduce) {
  CliRun r = run("reduce --quadruple=15,2,2,3");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["root"], "-1,2,2,3");
  EXPECT_EQ(j["result"]["word"], "[1]");
  EXPECT_EQ(j["config"]["command"], "reduce");
  CliRun c = run("reduce --quadruple=15,2,2,3 --format csv");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("# {", 0), 0u);
  EXPECT_NE(c.out.find("\"-1,2,2,3\",\"[1]\""), std::string::npos);
}

TEST(Cli, WalkReachesFiveModSeven) {
  CliRun r = run("walk --root=-6,11,14,15 --m=7 --ell=5 --seed-curvature=23");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  auto steps = j["result"]["steps"];
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_EQ(steps[0]["curvature"], 23);
  acp::i64 last = steps[2]["curvature"];
  EXPECT_EQ(acp::mod(last, 7), 5);
  EXPECT_TRUE(oracle::trial_prime(steps[1]["curvature"].get<acp::i64>()));
  EXPECT_TRUE(j["result"]["core"].get<bool>());
}

TEST(Cli, Deterministic) {
  std::string a = run("enumerate --root=-2,3,6,7 --X=100000 --workers=1").out;
  std::string b = run("enumerate --root=-2,3,6,7 --X=100000 --workers=3").out;
  auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
  EXPECT_EQ(ja["result"], jb["result"]);
  EXPECT_EQ(a, run("enumerate --root=-2,3,6,7 --X=100000 --workers=1").out);
  EXPECT_EQ(ja["result"]["counts"][0]["circles"], acp::count_circles(acp::make_quadruple(-2, 3, 6, 7), 100000).circles);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("reduce --quadruple=15,2,2,3 --bogus").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
  EXPECT_EQ(run("reduce").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("thicken --root=-6,11,14,15 --X=1000 --seed-curvature=4").code, 1);
  EXPECT_EQ(run("reduce --quadruple=1,2,3,4").code, 1);
}

TEST(Cli, Render) {
  std::string path = testing::TempDir() + "acp_cli.svg";
  CliRun r = run("render --root=-1,2,2,3 --X=100 --output " + path);
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["result"]["max_residual"].get<double>(), 1e-6);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
  EXPECT_EQ(run("render --root=-1,2,2,3 --X=2000000 --output " + path).code, 1);
}
