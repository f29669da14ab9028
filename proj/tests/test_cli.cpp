#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "catsl2/cli.hpp"
#include "json.hpp"

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "catsl2");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = catsl2::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

const std::string kDocs = CATSL2_DOCS_DIR;

}  // namespace

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run({"verify", "--N", "1"}).code, 0);
  CliRun zero = run({"verify", "--N", "0"});
  EXPECT_EQ(zero.code, 2);
  EXPECT_NE(zero.err.find("N must be"), std::string::npos);
  EXPECT_EQ(run({"verify", "--N", "5"}).code, 2);
  EXPECT_EQ(run({"verify", "--N", "2", "--suites", "bubbles,nope"}).code, 2);
  EXPECT_EQ(run({"verify", "--N", "x"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "--N", "2", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, VerifyJson) {
  CliRun r = run({"verify", "--N", "2", "--suites", "bubbles", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_FALSE(j["entries"].empty());
}

TEST(Cli, Help) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
  CliRun sub = run({"bubble", "--help"});
  EXPECT_EQ(sub.code, 0);
  EXPECT_NE(sub.out.find("--orient"), std::string::npos);
}

TEST(Cli, EnvironmentSuppliesN) {
  setenv("CATSL2_N", "3", 1);
  CliRun env = run({"special", "--k", "2", "--family", "Y", "--alpha", "2"});
  CliRun flag = run({"special", "--N", "4", "--k", "3", "--family", "Y", "--alpha", "2"});
  unsetenv("CATSL2_N");
  EXPECT_EQ(env.code, 0);
  EXPECT_EQ(env.out, "x[1]@1^2 - x[2]@1\n");
  EXPECT_EQ(flag.out, "x[1]@2^2 - x[2]@2\n");
  EXPECT_EQ(run({"special", "--k", "2", "--family", "Y", "--alpha", "2"}).code, 2);
}

TEST(Cli, Queries) {
  EXPECT_EQ(run({"special", "--N", "3", "--weight", "1", "--family", "Y", "--alpha", "2"}).out, "x[1]@1^2 - x[2]@1\n");
  EXPECT_EQ(run({"bubble", "--N", "2", "--k", "1", "--orient", "cw", "--alpha", "0"}).out, "1\n");
  EXPECT_EQ(run({"bubble", "--N", "2", "--k", "1", "--orient", "ccw", "--alpha", "-1"}).out, "0\n");
  EXPECT_EQ(run({"rank", "--word", "E", "--weight", "-1", "--N", "1"}).out, "1\n");
  EXPECT_EQ(run({"rank", "--word", "F", "--weight", "-1", "--N", "1"}).out, "0\n");
  CliRun j = run({"rank", "--word", "E F", "--weight", "0", "--N", "2", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)["path"], "(1,0,1){-1}");
}

TEST(Cli, QueryErrors) {
  EXPECT_EQ(run({"bubble", "--N", "2", "--orient", "cw", "--alpha", "0"}).code, 2);
  EXPECT_EQ(run({"bubble", "--N", "2", "--k", "1", "--weight", "0", "--orient", "cw", "--alpha", "0"}).code, 2);
  EXPECT_EQ(run({"bubble", "--N", "2", "--k", "3", "--orient", "cw", "--alpha", "0"}).code, 2);
  EXPECT_EQ(run({"bubble", "--N", "2", "--k", "1", "--orient", "up", "--alpha", "0"}).code, 2);
  EXPECT_EQ(run({"special", "--N", "2", "--weight", "1", "--family", "X", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run({"special", "--N", "2", "--k", "1", "--family", "Z", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run({"rank", "--word", "E Q", "--weight", "0", "--N", "2"}).code, 2);
  EXPECT_EQ(run({"rank", "--word", "E", "--weight", "0", "--N", "1"}).code, 2);
  EXPECT_EQ(run({"rank", "--word", "E", "--N", "1"}).code, 2);
}

TEST(Cli, Eval) {
  std::string crossing = temp_file("crossing.cat", "N = 2\nweight = -2\ndomain = E E\nlayer: cross_ee\n");
  CliRun r = run({"eval", "--diagram", crossing, "--element", "xi | 1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "1 | 1");

  std::string dot = temp_file("dot.cat", "N = 3\nweight = -1\ndomain = E\nlayer: dot_e\n");
  EXPECT_EQ(first_line(run({"eval", "--diagram", dot, "--element", "1"}).out), "xi");

  CliRun j = run({"eval", "--diagram", kDocs + "/diagrams/zigzag.cat", "--element", "xi", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["image"], parsed["input"]);
  EXPECT_EQ(parsed["map_degree"], 0);
}

TEST(Cli, EvalErrors) {
  std::string dot = temp_file("dot2.cat", "N = 3\nweight = -1\ndomain = E\nlayer: dot_e\n");
  CliRun bad = run({"eval", "--diagram", dot, "--element", "xi +"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("1:5-"), std::string::npos) << bad.err;

  std::string broken = temp_file("broken.cat", "N = 2\nweight = 0\ndomain = E\nlayer: cap_fe\n");
  CliRun b = run({"eval", "--diagram", broken, "--element", "1"});
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.err.find("4:8-14"), std::string::npos) << b.err;
  EXPECT_NE(b.err.find("cap consumes 2 strands, found 1"), std::string::npos);

  EXPECT_EQ(run({"eval", "--diagram", "/nonexistent.cat", "--element", "1"}).code, 2);

  std::string zero = temp_file("zero.cat", "N = 1\nweight = -1\ndomain = F\nlayer: dot_f\n");
  CliRun z = run({"eval", "--diagram", zero, "--element", "0"});
  EXPECT_NE(z.err.find("warning"), std::string::npos);
}
