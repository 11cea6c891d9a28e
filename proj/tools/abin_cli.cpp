// abin: culling benchmark driver.
//
//   abin run <scenario.json> -o <dir>
//   abin compare <scenario.json> -o <dir>
//   abin selftest [--seed N]

#include "abin/abin.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

struct Overrides {
  double inflation = 0.0;
  int start_level = -1;
  int max_level = -1;
  bool timing = false;

  void attach(CLI::App* app) {
    app->add_option("--inflation", inflation, "Bin inflation factor in [1, 2]");
    app->add_option("--start-level", start_level, "Quadtree start level");
    app->add_option("--max-level", max_level, "Quadtree max level");
    app->add_flag("--timing", timing, "Record traversal times in stats.csv (otherwise written as 0)");
  }

  abin::RunOptions options() const {
    abin::RunOptions o;
    if (inflation > 0.0) o.inflation = inflation;
    if (start_level >= 0) o.start_level = start_level;
    if (max_level >= 0) o.max_level = max_level;
    o.timing = timing;
    return o;
  }
};

int cmd_run(const std::string& scenario_path, const std::string& out_dir, const Overrides& ov) {
  abin::Scenario s = abin::load_scenario(scenario_path);
  abin::apply_overrides(s, ov.options());
  abin::run_scenario(s, out_dir, ov.options());
  std::cout << "wrote " << s.cameras.size() * s.methods.size() << " rows to " << out_dir << "/stats.csv\n";
  return 0;
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir, const Overrides& ov) {
  abin::Scenario s = abin::load_scenario(scenario_path);
  abin::apply_overrides(s, ov.options());
  const abin::CompareSummary sum = abin::compare_scenario(s, out_dir, ov.options());
  for (const auto& rep : sum.reports) {
    std::cout << rep.method_b << " vs " << rep.method_a << " (intersect ratio B/A per frame)\n";
    for (const auto& f : rep.frames) {
      std::printf("  frame %4d  %6llu / %6llu  ratio %s%s\n", f.frame, static_cast<unsigned long long>(f.intersect_b),
                  static_cast<unsigned long long>(f.intersect_a),
                  f.ratio ? std::to_string(*f.ratio).c_str() : "n/a", f.partial_coverage ? "" : "  (full/empty)");
    }
    const auto mean = rep.mean_partial_ratio();
    std::cout << "  mean ratio over partial-coverage frames: " << (mean ? std::to_string(*mean) : "n/a") << "\n";
  }
  for (std::size_t k = 0; k < s.methods.size(); ++k) {
    std::cout << "UNSOUND " << abin::to_string(s.methods[k]) << ": " << sum.unsound[k] << "\n";
    if (sum.plane_gap[k]) {
      std::printf("plane-state gap %s: %llu / %llu (%.4f%%), wrong direction %llu\n",
                  std::string(abin::to_string(s.methods[k])).c_str(),
                  static_cast<unsigned long long>(sum.plane_gap[k]->disagreements),
                  static_cast<unsigned long long>(sum.plane_gap[k]->tests), 100.0 * sum.plane_gap[k]->fraction(),
                  static_cast<unsigned long long>(sum.plane_gap[k]->wrong_direction));
    }
  }
  return sum.unsound_exact == 0 ? 0 : 3;
}

int cmd_selftest(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : abin::run_selftest(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic-bin frustum culling benchmark"};
  app.require_subcommand(1);

  std::string scenario, out_dir;
  Overrides ov;
  auto* run = app.add_subcommand("run", "Traverse every frame with every method and write stats.csv");
  run->add_option("scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", out_dir, "Output directory")->required();
  ov.attach(run);

  auto* compare = app.add_subcommand("compare", "Compare methods against the sampling oracle");
  compare->add_option("scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("-o,--out", out_dir, "Output directory")->required();
  ov.attach(compare);

  std::uint64_t seed = 1;
  auto* selftest = app.add_subcommand("selftest", "Run the embedded invariant suites");
  selftest->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(scenario, out_dir, ov);
    if (*compare) return cmd_compare(scenario, out_dir, ov);
    return cmd_selftest(seed);
  } catch (const abin::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
  } catch (const abin::IngestError& e) {
    std::cerr << "heightfield error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
