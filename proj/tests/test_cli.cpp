#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "hyperball/cli.hpp"
#include "hyperball/io.hpp"

using namespace hyperball;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  CliRun r = run(args);
  Json j = Json::parse(r.out);
  j.erase("timing");
  return j;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("hyperball_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents = "") const {
    const std::string p = (path_ / name).string();
    if (!contents.empty()) write_file(p, contents);
    return p;
  }

 private:
  std::filesystem::path path_;
};

const char* kTwoBoxes =
    R"({"region":{"dim":2,"pieces":[
      {"dim":2,"rows":[{"a":["1","0"],"b":"1"},{"a":["-1","0"],"b":"1"},{"a":["0","1"],"b":"1"},{"a":["0","-1"],"b":"1"}]},
      {"dim":2,"rows":[{"a":["1","0"],"b":"6"},{"a":["-1","0"],"b":"-4"},{"a":["0","1"],"b":"1"},{"a":["0","-1"],"b":"1"}]}]}})";

const char* kBox = R"({"ball":{"center":["0","0"],"r":"2"}})";

const char* kFamily =
    R"({"type":"family","k":2,"balls":[
      {"center":["0","0"],"r":"2"},{"center":["3","1"],"r":"2"},{"center":["1","4"],"r":"5/2"},
      {"center":["-2","2"],"r":"3"},{"center":["2","-2"],"r":"7/2"}]})";

}  // namespace

TEST(Cli, IpThresholdPrintsFour) {
  const CliRun r = run({"ip-threshold", "--k", "2"});
  EXPECT_EQ(r.code, kExitHolds);
  EXPECT_EQ(r.out, "4\n");
  EXPECT_EQ(run({"ip-threshold", "--k", "1"}).code, kExitUsage);
}

TEST(Cli, HellyVerifyExitsRefuted) {
  const CliRun r = run({"helly", "--dim", "4", "--verify"});
  EXPECT_EQ(r.code, kExitRefuted);
  EXPECT_NE(r.out.find("helly_order: refuted"), std::string::npos);
}

TEST(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run({"ip-threshold", "--k", "2", "--frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"barycenter", "--points", "x.json", "--tau", "0"}).code, kExitUsage);
}

TEST(Cli, HellyInstanceFileRoundTrips) {
  TempDir dir;
  const std::string path = dir.file("h3.json");
  EXPECT_EQ(run({"helly", "--dim", "3", "--out", path}).code, kExitHolds);
  const std::string written = read_file(path);
  EXPECT_EQ(serialize_instance(parse_instance(path)), written);
  EXPECT_EQ(run({"helly", "--dim", "3"}).out, written);
  EXPECT_EQ(run({"check", "--instance", path}).code, kExitHolds);
  EXPECT_EQ(run({"helly", "--instance", path}).code, kExitRefuted);
  EXPECT_EQ(run({"helly", "--instance", path, "--k", "4"}).code, kExitHolds);
}

TEST(Cli, RefuteExitCodes) {
  TempDir dir;
  const std::string two = dir.file("two.json", kTwoBoxes);
  const std::string box = dir.file("box.json", kBox);
  EXPECT_EQ(run({"refute", "--instance", two, "--budget", "1000", "--seed", "3"}).code, kExitRefuted);
  EXPECT_EQ(run({"refute", "--instance", box, "--budget", "500", "--level", "3"}).code, kExitInconclusive);
  EXPECT_EQ(run({"refute", "--instance", box, "--budget", "200", "--up-to", "5"}).code, kExitInconclusive);
  EXPECT_EQ(run({"refute", "--instance", box, "--variant", "sideways"}).code, kExitUsage);
}

TEST(Cli, ReportsAreDeterministic) {
  TempDir dir;
  const std::string two = dir.file("two.json", kTwoBoxes);
  const std::vector<std::string> args{"refute", "--instance", two, "--budget", "1000", "--seed", "9"};
  const Json a = run_json(args);
  const Json b = run_json(args);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["version"], std::string(kVersion));
  EXPECT_EQ(a["config"]["seed"], 9);
  EXPECT_EQ(a["result"]["verdict"], "refuted");
}

TEST(Cli, ThreadCountDoesNotChangeTheReport) {
  TempDir dir;
  const std::string two = dir.file("two.json", kTwoBoxes);
  const std::vector<std::string> args{"refute", "--instance", two, "--budget", "2000", "--seed", "4"};
  ::setenv("HYPERBALL_THREADS", "1", 1);
  Json one = run_json(args);
  ::setenv("HYPERBALL_THREADS", "3", 1);
  Json three = run_json(args);
  one.erase("config");
  three.erase("config");
  EXPECT_EQ(one.dump(), three.dump());
  ::setenv("HYPERBALL_THREADS", "many", 1);
  EXPECT_EQ(run(args).code, kExitUsage);
  ::unsetenv("HYPERBALL_THREADS");
}

TEST(Cli, CheckMetricAndGraph) {
  TempDir dir;
  const std::string c5 = dir.file("c5.json", R"({"type":"graph","n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]})");
  const std::string path = dir.file("p.json", R"({"type":"graph","n":4,"edges":[[0,1],[1,2],[2,3]]})");
  EXPECT_EQ(run({"check", "--instance", c5}).code, kExitRefuted);
  EXPECT_EQ(run({"check", "--instance", path}).code, kExitHolds);
  EXPECT_EQ(run({"graph-scan", "--instance", path, "--n", "3"}).code, kExitHolds);
  EXPECT_EQ(run({"graph-scan", "--instance", c5, "--n", "2"}).code, kExitRefuted);
  const std::string bad = dir.file("bad.json", R"({"type":"matrix","dist":[["0","1/0"],["1","0"]]})");
  const Json j = run_json({"check", "--instance", bad});
  EXPECT_EQ(j["exit_code"], kExitUsage);
  EXPECT_EQ(j["error"]["code"], "ParseError");
}

TEST(Cli, CheckFamilyAndRegion) {
  TempDir dir;
  const std::string fam = dir.file("fam.json", kFamily);
  const CliRun r = run({"check", "--instance", fam});
  EXPECT_EQ(r.code, kExitHolds);
  EXPECT_NE(r.out.find("witness"), std::string::npos);
  const std::string apart = dir.file(
      "apart.json", R"({"type":"family","balls":[{"center":["0"],"r":"1"},{"center":["5"],"r":"1"}]})");
  EXPECT_EQ(run({"check", "--instance", apart}).code, kExitRefuted);
  const std::string box = dir.file("box.json", kBox);
  EXPECT_EQ(run({"check", "--instance", box}).code, kExitHolds);
}

TEST(Cli, Barycenter) {
  TempDir dir;
  const std::string pts = dir.file("pts.json", R"({"type":"points","points":[["0"],["1"],["2"]]})");
  const Json j = run_json({"barycenter", "--points", pts});
  const Scalar d = parse_scalar(j["result"]["distance_to_mean"].get<std::string>());
  EXPECT_LE(d, pow2(-30));
  const Json exact = run_json({"barycenter", "--points", pts, "--method", "closed-form"});
  EXPECT_EQ(exact["result"]["point"][0], "1/1");
  EXPECT_EQ(run({"barycenter", "--points", pts, "--backend", "abacus"}).code, kExitUsage);
}

TEST(Cli, IpLift) {
  TempDir dir;
  const std::string fam = dir.file("fam.json", kFamily);
  const Json j = run_json({"ip-lift", "--instance", fam});
  EXPECT_EQ(j["exit_code"], kExitHolds) << j.dump(2);
  EXPECT_EQ(j["result"]["params"]["c"], "1089/1280");  // 4/5 (33/32)^2
  EXPECT_TRUE(j["result"]["report"]["passed"].get<bool>());
  EXPECT_EQ(run({"ip-lift", "--instance", fam, "--oracle", "corner", "--seed", "5"}).code, kExitHolds);
  EXPECT_EQ(run({"ip-lift", "--instance", fam, "--k", "5"}).code, kExitUsage);
}

TEST(Cli, RefineSchemes) {
  TempDir dir;
  const std::string triple = dir.file("triple.json", R"({"type":"refine","scheme":"triple-34","rounds":12,
      "start":["0","0"],
      "sets":[{"dim":2,"rows":[{"a":["-1","0"],"b":"-1"},{"a":["0","-1"],"b":"-1"}]},
              {"dim":2,"rows":[{"a":["1","0"],"b":"2"}]},
              {"dim":2,"rows":[{"a":["0","1"],"b":"2"}]}]})");
  EXPECT_EQ(run({"refine", "--instance", triple, "--seed", "2"}).code, kExitHolds);
  const std::string cauchy = dir.file("cauchy.json", R"({"type":"refine","scheme":"cauchy-halving","rounds":10,
      "family":[{"center":["0","0"],"r":"1"},{"center":["2","0"],"r":"1"}],
      "sets":[{"dim":2,"rows":[{"a":["0","1"],"b":"0"}]}]})");
  const Json j = run_json({"refine", "--instance", cauchy});
  EXPECT_EQ(j["exit_code"], kExitHolds) << j.dump(2);
  const std::string chain = dir.file("chain.json", R"({"type":"refine","scheme":"chain-walk",
      "x":["2","3"],"r":"3","y":["-3","-1"],"eps":"1/2","delta":"1/4",
      "sets":[{"dim":2,"rows":[{"a":["1","0"],"b":"0"}]},{"dim":2,"rows":[{"a":["0","1"],"b":"0"}]}]})");
  EXPECT_EQ(run({"refine", "--instance", chain}).code, kExitHolds);
  // The pair queries fail here: near x only the corner (2, 2) of the first set is in reach.
  const std::string stuck = dir.file("stuck.json", R"({"type":"refine","scheme":"chain-walk",
      "x":["4","0"],"r":"2","y":["0","0"],"eps":"1/2","delta":"1/4",
      "sets":[{"dim":2,"rows":[{"a":["1","-1"],"b":"0"}]},{"dim":2,"rows":[{"a":["-1","-1"],"b":"0"}]}]})");
  EXPECT_EQ(run({"refine", "--instance", stuck}).code, kExitInconclusive);
}

TEST(Cli, BinaryExitCodes) {
  const char* bin = std::getenv("HYPERBALL_CLI");
  if (!bin) GTEST_SKIP() << "HYPERBALL_CLI not set";
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("ip-threshold --k 2"), 0);
  EXPECT_EQ(status("helly --dim 4 --verify"), 1);
  EXPECT_EQ(status("ip-threshold --k 2 --unknown"), 3);
}
