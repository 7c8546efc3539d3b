#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "knotfert/knotfert.hpp"

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KNOTFERT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(KNOTFERT_TEST_DATA) + "/" + name; }

json golden(const std::string& name) {
  std::ifstream in(data("golden_" + name + ".json"));
  return json::parse(in);
}

json results(const std::string& args) {
  const auto r = run(args + " --no-timing");
  EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
  return json::parse(r.out).at("results");
}

std::string error_kind(const Run& r) {
  try {
    return json::parse(r.out).at("error").at("kind").get<std::string>();
  } catch (const std::exception&) {
    return "";
  }
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(testing::TempDir()) / ("knotfert_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, GoldenResolve) { EXPECT_EQ(results("resolve " + data("shadows.txt")), golden("resolve")); }

TEST(Cli, GoldenIdentify) {
  EXPECT_EQ(results("identify " + data("diagrams.json")), golden("identify"));
}

TEST(Cli, GoldenFertility) {
  EXPECT_EQ(results("fertility 4_1"), golden("fertility_4_1"));
  EXPECT_EQ(results("fertility 5_1"), golden("fertility_5_1"));
}

TEST(Cli, GoldenBraid3) {
  EXPECT_EQ(results("braid3 'a1 a1 a1 a2'"), golden("braid3_trefoil"));
  EXPECT_EQ(results("braid3 'a1 a2^-1 a1 a2^-1'"), golden("braid3_fig8"));
}

TEST(Cli, GoldenBounds) { EXPECT_EQ(results("bounds --c 31 --b 3"), golden("bounds_31_3")); }

TEST(Cli, ReportShape) {
  const auto r = run("resolve " + data("shadows.txt"));
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  for (const char* key : {"command", "config", "results", "cache", "timing_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("command"), "resolve");
  EXPECT_FALSE(json::parse(run("resolve " + data("shadows.txt") + " --no-timing").out).contains("timing_ms"));
}

TEST(Cli, Deterministic) {
  const auto a = run("resolve " + data("shadows.txt") + " --no-timing");
  const auto b = run("resolve " + data("shadows.txt") + " --no-timing");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(results("resolve " + data("shadows.txt") + " --jobs 4"),
            results("resolve " + data("shadows.txt") + " --jobs 1"));
  EXPECT_EQ(results("fertility 6_3 --jobs 3"), results("fertility 6_3"));
}

TEST(Cli, FertilityVerdicts) {
  EXPECT_EQ(results("fertility 4_1").at("verdict"), "verified");
  const auto r51 = results("fertility 5_1");
  EXPECT_EQ(r51.at("verdict"), "refuted");
  EXPECT_EQ(r51.at("missing"), json::array({"4_1"}));
  EXPECT_EQ(results("fertility 8_1").at("verdict"), "refuted");
  EXPECT_EQ(results("fertility 5_1 --upto 3").at("verdict"), "verified");
}

TEST(Cli, CustomManifest) {
  const auto dir = scratch("manifest");
  std::ifstream in(std::string(KNOTFERT_DATA_DIR) + "/manifests/5_1.json");
  auto m = json::parse(in);
  m["complete"] = false;
  std::ofstream(dir / "m.json") << m.dump();
  EXPECT_EQ(results("fertility 5_1 --diagrams " + (dir / "m.json").string()).at("verdict"),
            "conditional-on-completeness");
}

TEST(Cli, ExitCodes) {
  const auto parse = run("identify " + data("garbled_pd.txt"));
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(error_kind(parse), "parse");
  const auto invalid = run("identify " + data("invalid_pd.txt"));
  EXPECT_EQ(invalid.code, 3);
  EXPECT_EQ(error_kind(invalid), "validation");
  const auto horizon = run("fertility 4_1 --upto 11");
  EXPECT_EQ(horizon.code, 5);
  EXPECT_EQ(error_kind(horizon), "horizon");
  const auto link = run("braid3 a1");
  EXPECT_EQ(link.code, 6);
  EXPECT_EQ(error_kind(link), "non_knot_closure");
  const auto table = run("table-check --table /nonexistent/table.csv");
  EXPECT_EQ(table.code, 7);
  EXPECT_EQ(error_kind(table), "data");
  EXPECT_EQ(run("fertility 11a_1").code, 7);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("bounds").code, 2);
  EXPECT_EQ(run("braid3 'a1 b2'").code, 2);
}

TEST(Cli, RefusesLargeEnumeration) {
  const auto dir = scratch("limit");
  std::ofstream(dir / "big.txt") << knotfert::serialize_shadow(knotfert::forget(knotfert::torus_T2_diagram(25)))
                                 << "\n";
  const auto r = run("resolve " + (dir / "big.txt").string());
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(error_kind(r), "limit");
}

TEST(Cli, CsvFormat) {
  const auto r = run("resolve " + data("shadows.txt") + " --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("shadow,knot,chirality,witness,count\n", 0), 0u);
  EXPECT_NE(r.out.find(",3_1,as-tabled,111,1"), std::string::npos) << r.out;
  const auto b = run("bounds --c 10 --format csv");
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(b.out.rfind("c,b,corollary_braid_bound,main_theorem,F_general,F_braid3\n", 0), 0u);
}

TEST(Cli, CacheHits) {
  const auto dir = scratch("cache");
  const std::string args = "resolve " + data("shadows.txt") + " --no-timing --cache-dir " + dir.string();
  const auto cold = json::parse(run(args).out);
  EXPECT_EQ(cold.at("cache").at("misses"), 3);
  EXPECT_EQ(cold.at("cache").at("hits"), 0);
  const auto warm = json::parse(run(args).out);
  EXPECT_EQ(warm.at("cache").at("hits"), 3);
  EXPECT_EQ(warm.at("results"), cold.at("results"));
  EXPECT_EQ(warm.at("results"), golden("resolve"));
}

TEST(Cli, Bounds) {
  const auto even = results("bounds --c 32");
  EXPECT_EQ(even.at("main_theorem"), "not-fertile");
  EXPECT_EQ(even.at("corollary_braid_bound"), 3);
  EXPECT_EQ(results("bounds --c 30").at("main_theorem"), "inconclusive");
  EXPECT_EQ(results("bounds --c 27 --b 3").at("main_theorem"), "not-fertile");
  EXPECT_EQ(results("bounds --c 27").at("main_theorem"), "inconclusive");
  const auto auto_parity = results("bounds --c 27 --parity-auto");
  ASSERT_EQ(auto_parity.at("thresholds").size(), 1u);
  EXPECT_EQ(auto_parity.at("thresholds")[0].at("parity"), "odd");
  EXPECT_EQ(auto_parity.at("thresholds")[0].at("first_excluded"), 27);
}

TEST(Cli, TableCheck) {
  const auto r = results("table-check");
  EXPECT_EQ(r.at("records"), 250);
  EXPECT_EQ(r.at("horizon"), 10);
}
