#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmf/suites.hpp"

using namespace cmf;
namespace fs = std::filesystem;

namespace {

int run_tool(const std::string& args) {
  std::string cmd = std::string(CMF_VERIFY_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "cmf_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  fs::remove(p);
  return p;
}

SuiteConfig config(const std::string& suite) {
  SuiteConfig c;
  c.suite = suite;
  return c;
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(validate(config("all")));
  CHECK_THROWS_AS(validate(config("nonsense")), ConfigError);
  SuiteConfig c = config("group");
  c.dims = {1};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config("bw");
  c.sizes = {64, 48};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.sizes = {128, 64};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config("modular");
  c.tol["modular"] = 1e-20;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.tol = {{"no_such_tolerance", 1e-3}};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.tol = {{"modular", 1e-3}};
  CHECK_NOTHROW(validate(c));
  CHECK(c.tolerance("modular") == 1e-3);
  CHECK(c.tolerance("kms") == 1e-6);
  CHECK_THROWS_AS(run(config("nonsense")), ConfigError);
}

TEST_CASE("named generators are reproducible and independent") {
  auto a = suite_rng(42, "group"), b = suite_rng(42, "group"), c = suite_rng(42, "flows"), d = suite_rng(43, "group");
  auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("group suite passes and every record carries an anchor") {
  Report r = run(config("group"));
  CHECK(r.passed());
  CHECK(r.count(Status::fail) == 0);
  CHECK(r.checks.size() > 30);
  for (const auto& c : r.checks) {
    CHECK_FALSE(c.anchor.empty());
    CHECK(c.suite == "group");
  }
  auto j = r.to_json();
  CHECK(j.begin().key() == "tool");
  CHECK(j["version"] == kToolVersion);
  CHECK(j.contains("wall_clock_s"));
  CHECK_FALSE(r.to_json(false).contains("wall_clock_s"));
}

TEST_CASE("reports are deterministic modulo wall clock") {
  for (const char* s : {"group", "flows", "modular"}) {
    SuiteConfig c = config(s);
    c.seed = 7;
    CHECK(run(c).to_json(false).dump() == run(c).to_json(false).dump());
  }
  SuiteConfig a = config("modular"), b = config("modular");
  b.seed = 8;
  CHECK(run(a).to_json(false).dump() != run(b).to_json(false).dump());
}

TEST_CASE("chiral suites are deterministic on the default ladder") {
  SuiteConfig c = config("bw");
  c.seed = 7;
  c.fixture = CMF_FIXTURE_PATH;
  std::string first = run(c).to_json(false).dump();
  CHECK(first == run(c).to_json(false).dump());
}

TEST_CASE("CSV export") {
  std::string csv = format_csv({"a", "b"}, {{0.1, 1.0 / 3}});
  CHECK(csv == "a,b\n0.10000000000000001,0.33333333333333331\n");
  CHECK(format_csv({"t"}, {}) == "t\n");
  fs::path p = scratch("empty.csv");
  export_csv(p.string(), {"t", "x0"}, {});
  CHECK(slurp(p) == "t,x0\n");
  CHECK_THROWS(export_csv("/nonexistent_dir/x.csv", {"t"}, {}));
}

TEST_CASE("driver exit codes") {
  fs::path out = scratch("report.json");
  CHECK(run_tool("--suite nonsense --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run_tool("--suite group --d 1") == 2);
  CHECK(run_tool("--suite group --tol form=1e-30") == 2);
  CHECK(run_tool("--suite group --tol form") == 2);
  CHECK(run_tool("--suite group --sizes 64,abc") == 2);
  CHECK(run_tool("--no-such-flag") == 2);
  CHECK(run_tool("--suite group --out /nonexistent_dir/report.json") == 2);
  CHECK(run_tool("--help") == 0);

  CHECK(run_tool("--suite modular --seed 3 --out " + out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["config"]["suite"] == "modular");
  CHECK(j["config"]["seed"] == 3);
  CHECK(j["summary"]["fail"] == 0);
  // a tolerance tighter than anything achievable turns passes into failures
  CHECK(run_tool("--suite modular --tol modular=1e-15") == 1);
}

TEST_CASE("driver exports: ladder and trajectory") {
  fs::path csv = scratch("ladder.csv");
  CHECK(run_tool("--suite duality --sizes 16,32 --csv " + csv.string()) == 0);
  std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + one row per size
  CHECK(text.rfind(ladder_header().front(), 0) == 0);

  fs::path traj = scratch("traj.csv");
  CHECK(run_tool("trajectory --flow cone --point 1,0,0,0 --t 0,0.25,0.5,0.75,1 --out " + traj.string()) == 0);
  text = slurp(traj);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(text.rfind("t,x0,x1,x2,x3\n0,1,0,0,0\n", 0) == 0);
  CHECK(run_tool("trajectory --flow spiral --point 1,0 --out " + traj.string()) == 2);
}
