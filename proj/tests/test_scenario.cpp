#include "abin/scenario.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace abin {
namespace {

namespace fs = std::filesystem;

const char* kMinimal = R"({
  "name": "minimal",
  "terrain": {"heightfield": {"synth": {"kind": "FLAT", "height": 0}}},
  "methods": ["ANALYTIC_BIN_EXACT"],
  "cameras": [{"eye": [0, 0, 20000000], "look_dir": [0, 0, -1], "fov_y": 1.0, "near": 1000, "far": 40000000}]
})";

std::string small_scenario(const std::string& methods) {
  return R"({
  "name": "small",
  "seed": 9,
  "terrain": {"start_level": 2, "max_level": 4,
              "heightfield": {"synth": {"kind": "SINUSOIDAL", "height": 2000, "rows": 33, "cols": 65}}},
  "methods": )" + methods + R"(,
  "oracle": {"lattice": [5, 5, 2]},
  "cameras": [
    {"eye": [0, 0, 20000000], "look_dir": [0, 0, -1], "fov_y": 1.0, "near": 1000, "far": 40000000},
    {"eye": [0, 0, 7200000], "look_dir": [0.3, 0, -1], "fov_y": 0.8, "aspect": 1.5, "near": 1000, "far": 3000000,
     "normalize": true}
  ]
})";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("abin_test_" + name);
  fs::remove_all(d);
  return d;
}

std::string error_path(const std::string& text) {
  try {
    (void)parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Scenario, MinimalDefaults) {
  const Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.name, "minimal");
  EXPECT_EQ(s.seed, 0u);
  EXPECT_EQ(s.terrain.cull.inflation, 1.1);
  EXPECT_EQ(s.terrain.start_level, 4);
  EXPECT_EQ(s.terrain.max_level, 7);
  EXPECT_EQ(s.geodetic.radius, 6371000.0);
  EXPECT_FALSE(s.oracle_enabled);
  EXPECT_EQ(s.lattice.n_lat, 33);
  EXPECT_EQ(s.lattice.n_r, 5);
  ASSERT_EQ(s.cameras.size(), 1u);
  EXPECT_EQ(s.cameras[0].aspect, 1.0);
  EXPECT_EQ(s.cameras[0].up_hint, Vec3::UnitY());
  ASSERT_EQ(s.methods.size(), 1u);
  EXPECT_EQ(s.methods[0], Method::AnalyticBinExact);
}

TEST(Scenario, ErrorsCarryJsonPaths) {
  std::string text = kMinimal;
  text.replace(text.find("ANALYTIC_BIN_EXACT"), 18, "BOUNDING_SPHERE");
  EXPECT_EQ(error_path(text), "$.methods[0]");

  text = kMinimal;
  text.replace(text.find("\"fov_y\": 1.0"), 12, "\"fov_y\": 4.0");
  EXPECT_EQ(error_path(text), "$.cameras[0]");

  text = kMinimal;
  text.replace(text.find("\"fov_y\": 1.0"), 12, "\"fov_y\": \"a\"");
  EXPECT_EQ(error_path(text), "$.cameras[0].fov_y");

  EXPECT_EQ(error_path("{"), "$");
  EXPECT_EQ(error_path(R"({"terrain": {}})"), "$.name");

  text = kMinimal;
  text.replace(text.find("\"name\""), 6, "\"cull\": {\"inflation\": 3}, \"name\"");
  EXPECT_EQ(error_path(text), "$.cull.inflation");

  text = kMinimal;
  text.replace(text.find("FLAT"), 4, "CRATER");
  EXPECT_EQ(error_path(text), "$.terrain.heightfield.synth.kind");
}

TEST(Scenario, MethodNamesRoundTrip) {
  for (Method m : {Method::AnalyticBinPaper9, Method::AnalyticBinExact, Method::Aabb8}) {
    EXPECT_EQ(method_from_string(to_string(m)), m);
  }
  EXPECT_FALSE(method_from_string("BOUNDING_SPHERE"));
}

TEST(Scenario, OverridesApply) {
  Scenario s = parse_scenario(small_scenario(R"(["AABB8"])"));
  RunOptions opt;
  opt.inflation = 1.3;
  opt.max_level = 3;
  apply_overrides(s, opt);
  EXPECT_EQ(s.terrain.cull.inflation, 1.3);
  EXPECT_EQ(s.terrain.max_level, 3);
  EXPECT_EQ(s.terrain.start_level, 2);
  opt = {};
  opt.start_level = 5;
  EXPECT_THROW(apply_overrides(s, opt), std::exception);
}

TEST(Scenario, RunWritesStatsAndVisibleSets) {
  const fs::path dir = temp_dir("run");
  const Scenario s = parse_scenario(small_scenario(R"(["AABB8", "ANALYTIC_BIN_EXACT"])"));
  run_scenario(s, dir);
  const std::string stats = slurp(dir / "stats.csv");
  EXPECT_EQ(stats.rfind(std::string(kStatsHeader), 0), 0u);
  EXPECT_EQ(std::count(stats.begin(), stats.end(), '\n'), 5);
  EXPECT_NE(stats.find("\n1,ANALYTIC_BIN_EXACT,"), std::string::npos);
  for (const char* f : {"visible_AABB8_0.json", "visible_AABB8_1.json", "visible_ANALYTIC_BIN_EXACT_0.json",
                        "visible_ANALYTIC_BIN_EXACT_1.json"}) {
    ASSERT_TRUE(fs::exists(dir / f)) << f;
    const auto j = nlohmann::json::parse(slurp(dir / f));
    EXPECT_TRUE(j.is_array());
  }
  // Frame 0 sees the whole globe: 32 start tiles, all inside.
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "visible_AABB8_0.json")).size(), 32u);

  const fs::path again = temp_dir("run_again");
  run_scenario(s, again);
  EXPECT_EQ(slurp(again / "stats.csv"), stats);
  EXPECT_EQ(slurp(again / "visible_ANALYTIC_BIN_EXACT_1.json"), slurp(dir / "visible_ANALYTIC_BIN_EXACT_1.json"));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST(Scenario, CompareDuplicateMethodsGivesUnitRatios) {
  const fs::path dir = temp_dir("dup");
  const Scenario s = parse_scenario(small_scenario(R"(["ANALYTIC_BIN_EXACT", "ANALYTIC_BIN_EXACT"])"));
  const CompareSummary sum = compare_scenario(s, dir);
  ASSERT_EQ(sum.reports.size(), 1u);
  for (const auto& f : sum.reports[0].frames) {
    if (f.ratio) {
      EXPECT_EQ(*f.ratio, 1.0);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i != j) {
          EXPECT_EQ(f.pairs[i][j], 0u);
        }
      }
    }
  }
  const auto j = nlohmann::json::parse(slurp(dir / "compare_1_ANALYTIC_BIN_EXACT_vs_ANALYTIC_BIN_EXACT.json"));
  EXPECT_EQ(j["scenario"], "small");
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["inflation"], 1.1);
  EXPECT_TRUE(j.contains("plane_mode_gap"));
  EXPECT_TRUE(fs::exists(dir / "compare_1_ANALYTIC_BIN_EXACT_vs_ANALYTIC_BIN_EXACT.csv"));
  fs::remove_all(dir);
}

TEST(Scenario, CompareIsDeterministic) {
  const Scenario s = parse_scenario(small_scenario(R"(["AABB8", "ANALYTIC_BIN_PAPER9", "ANALYTIC_BIN_EXACT"])"));
  const fs::path a = temp_dir("cmp_a"), b = temp_dir("cmp_b");
  const CompareSummary sa = compare_scenario(s, a);
  (void)compare_scenario(s, b);
  ASSERT_EQ(sa.reports.size(), 2u);
  for (const auto& e : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Scenario, CompareRequiresTwoMethodsAndOracle) {
  const fs::path dir = temp_dir("req");
  EXPECT_THROW((void)compare_scenario(parse_scenario(small_scenario(R"(["AABB8"])")), dir), ScenarioError);
  Scenario s = parse_scenario(small_scenario(R"(["AABB8", "ANALYTIC_BIN_EXACT"])"));
  s.oracle_enabled = false;
  EXPECT_THROW((void)compare_scenario(s, dir), ScenarioError);
  fs::remove_all(dir);
}

TEST(Scenario, HeightfieldPathResolvesAgainstScenarioDir) {
  const fs::path dir = temp_dir("path");
  fs::create_directories(dir);
  save_portable(synth_heightfield({SynthKind::Flat, 42.0, 0.1, 0.1, 8, 9, 17}), dir / "hf.abhf");
  std::string text = kMinimal;
  const std::string synth = R"({"synth": {"kind": "FLAT", "height": 0}})";
  text.replace(text.find(synth), synth.size(), R"({"path": "hf.abhf"})");
  {
    std::ofstream(dir / "s.json") << text;
  }
  const Scenario s = load_scenario(dir / "s.json");
  ASSERT_TRUE(s.heightfield.path);
  EXPECT_EQ(*s.heightfield.path, dir / "hf.abhf");
  EXPECT_EQ(load_terrain(s).interval({4, 3, 3}), (Interval{42, 42}));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace abin
