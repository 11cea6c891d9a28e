#pragma once

// Benchmark scenarios: JSON parsing with defaults, and the run / compare
// drivers behind the command-line tool.

#include "abin/compare.hpp"
#include "abin/heightfield.hpp"
#include "abin/terrain.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace abin {

/// Validation failure; the message starts with the JSON path of the field.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Method { AnalyticBinPaper9, AnalyticBinExact, Aabb8 };

[[nodiscard]] inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::AnalyticBinPaper9: return "ANALYTIC_BIN_PAPER9";
    case Method::AnalyticBinExact: return "ANALYTIC_BIN_EXACT";
    case Method::Aabb8: return "AABB8";
  }
  return "?";
}

[[nodiscard]] inline std::optional<Method> method_from_string(std::string_view s) {
  for (Method m : {Method::AnalyticBinPaper9, Method::AnalyticBinExact, Method::Aabb8}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

struct HeightSource {
  std::optional<std::filesystem::path> path;
  SynthSpec synth{};
};

struct Scenario {
  std::string name;
  TerrainConfig terrain{};
  HeightSource heightfield{};
  GeodeticParams geodetic{};
  std::vector<CameraPose> cameras;
  std::vector<Method> methods;
  bool oracle_enabled = false;
  OracleLattice lattice{};
  std::uint64_t seed = 0;
};

namespace detail {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[nodiscard]] const json& raw() const { return j_; }
  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] bool has(const char* key) const { return j_.contains(key); }

  [[nodiscard]] Reader at(const char* key) const {
    if (!j_.contains(key)) throw ScenarioError(path_ + "." + key, "required field is missing");
    return {j_.at(key), path_ + "." + key};
  }
  [[nodiscard]] Reader at(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

  [[nodiscard]] double number() const {
    if (!j_.is_number()) throw ScenarioError(path_, "expected a number");
    return j_.get<double>();
  }
  [[nodiscard]] std::int64_t integer() const {
    if (!j_.is_number_integer()) throw ScenarioError(path_, "expected an integer");
    return j_.get<std::int64_t>();
  }
  [[nodiscard]] bool boolean() const {
    if (!j_.is_boolean()) throw ScenarioError(path_, "expected true or false");
    return j_.get<bool>();
  }
  [[nodiscard]] std::string string() const {
    if (!j_.is_string()) throw ScenarioError(path_, "expected a string");
    return j_.get<std::string>();
  }
  [[nodiscard]] std::size_t array_size(std::size_t min_size) const {
    if (!j_.is_array()) throw ScenarioError(path_, "expected an array");
    if (j_.size() < min_size) throw ScenarioError(path_, "expected at least " + std::to_string(min_size) + " entries");
    return j_.size();
  }
  [[nodiscard]] Vec3 vec3() const {
    if (array_size(3) != 3) throw ScenarioError(path_, "expected exactly 3 numbers");
    return {at(std::size_t{0}).number(), at(std::size_t{1}).number(), at(std::size_t{2}).number()};
  }
  [[nodiscard]] Interval interval() const {
    if (array_size(2) != 2) throw ScenarioError(path_, "expected [lo, hi]");
    return {at(std::size_t{0}).number(), at(std::size_t{1}).number()};
  }

  double number_or(const char* key, double fallback) const { return has(key) ? at(key).number() : fallback; }
  std::int64_t integer_or(const char* key, std::int64_t fallback) const {
    return has(key) ? at(key).integer() : fallback;
  }

 private:
  const json& j_;
  std::string path_;
};

template <class Fn>
void guarded(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    throw ScenarioError(path, e.what());
  }
}

inline SynthKind synth_kind(const Reader& r) {
  const std::string s = r.string();
  if (s == "FLAT") return SynthKind::Flat;
  if (s == "SINGLE_PEAK") return SynthKind::SinglePeak;
  if (s == "SINUSOIDAL") return SynthKind::Sinusoidal;
  throw ScenarioError(r.path(), "unknown synthetic terrain kind '" + s + "'");
}

inline CameraPose parse_camera(const Reader& c) {
  CameraPose pose;
  pose.eye = c.at("eye").vec3();
  pose.look_dir = c.at("look_dir").vec3();
  pose.up_hint = c.has("up_hint") ? c.at("up_hint").vec3() : Vec3::UnitY();
  pose.fov_y = c.at("fov_y").number();
  pose.aspect = c.number_or("aspect", 1.0);
  pose.near = c.at("near").number();
  pose.far = c.at("far").number();
  if (c.has("normalize") && c.at("normalize").boolean()) {
    pose.look_dir.normalize();
    pose.up_hint.normalize();
  }
  guarded(c.path(), [&] { pose.validate(); });
  return pose;
}

}  // namespace detail

/// Parses a scenario document. Relative heightfield paths resolve against
/// `base_dir`. Defaults: inflation 1.1, start_level 4, max_level 7, radius
/// 6371000 m, oracle lattice 33x33x5, oracle disabled, seed 0.
[[nodiscard]] inline Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {}) {
  using detail::Reader;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("$", std::string("malformed JSON: ") + e.what());
  }
  const Reader root(doc, "$");
  if (!doc.is_object()) throw ScenarioError("$", "expected an object");

  Scenario s;
  s.name = root.at("name").string();
  s.seed = static_cast<std::uint64_t>(root.integer_or("seed", 0));

  if (root.has("geodetic")) {
    const Reader g = root.at("geodetic");
    s.geodetic.radius = g.number_or("radius", s.geodetic.radius);
    detail::guarded(g.path() + ".radius", [&] { s.geodetic.validate(); });
  }

  const Reader t = root.at("terrain");
  s.terrain.start_level = static_cast<int>(t.integer_or("start_level", 4));
  s.terrain.max_level = static_cast<int>(t.integer_or("max_level", 7));
  if (t.has("root_lat")) s.terrain.root_lat = t.at("root_lat").interval();
  if (t.has("root_lon")) s.terrain.root_lon = t.at("root_lon").interval();
  if (t.has("altitude")) s.terrain.altitude = t.at("altitude").interval();
  s.terrain.threads = static_cast<int>(t.integer_or("threads", 1));

  const Reader hf = t.at("heightfield");
  if (hf.has("path")) {
    std::filesystem::path p = hf.at("path").string();
    s.heightfield.path = p.is_relative() ? base_dir / p : p;
  } else {
    const Reader sy = hf.at("synth");
    SynthSpec& sp = s.heightfield.synth;
    sp.kind = detail::synth_kind(sy.at("kind"));
    sp.height = sy.number_or("height", sp.height);
    sp.peak_lat = sy.number_or("peak_lat", sp.peak_lat);
    sp.peak_lon = sy.number_or("peak_lon", sp.peak_lon);
    sp.wavenumber = sy.number_or("k", sp.wavenumber);
    sp.rows = static_cast<int>(sy.integer_or("rows", sp.rows));
    sp.cols = static_cast<int>(sy.integer_or("cols", sp.cols));
    if (sp.rows < 2 || sp.cols < 2) throw ScenarioError(sy.path(), "rows and cols must be at least 2");
    if (sp.kind == SynthKind::Sinusoidal && !(sp.height >= 0.0 && sp.height <= kMaxHeight)) {
      throw ScenarioError(sy.path() + ".height", "sinusoid amplitude must lie in [0, 9000]");
    }
  }

  if (root.has("cull")) {
    const Reader c = root.at("cull");
    s.terrain.cull.inflation = c.number_or("inflation", s.terrain.cull.inflation);
    detail::guarded(c.path() + ".inflation", [&] { s.terrain.cull.validate(); });
  }
  detail::guarded(t.path(), [&] { s.terrain.validate(); });

  const Reader methods = root.at("methods");
  for (std::size_t i = 0, n = methods.array_size(1); i < n; ++i) {
    const Reader m = methods.at(i);
    const auto parsed = method_from_string(m.string());
    if (!parsed) throw ScenarioError(m.path(), "unknown method '" + m.string() + "'");
    s.methods.push_back(*parsed);
  }

  if (root.has("oracle")) {
    const Reader o = root.at("oracle");
    s.oracle_enabled = o.has("enabled") ? o.at("enabled").boolean() : true;
    if (o.has("lattice")) {
      const Reader l = o.at("lattice");
      if (l.array_size(3) != 3) throw ScenarioError(l.path(), "expected [n_lat, n_lon, n_r]");
      s.lattice = {static_cast<int>(l.at(std::size_t{0}).integer()), static_cast<int>(l.at(std::size_t{1}).integer()),
                   static_cast<int>(l.at(std::size_t{2}).integer())};
      if (s.lattice.n_lat < 2 || s.lattice.n_lon < 2 || s.lattice.n_r < 1) {
        throw ScenarioError(l.path(), "lattice needs n_lat >= 2, n_lon >= 2, n_r >= 1");
      }
    }
  }

  const Reader cams = root.at("cameras");
  for (std::size_t i = 0, n = cams.array_size(1); i < n; ++i) s.cameras.push_back(detail::parse_camera(cams.at(i)));
  return s;
}

[[nodiscard]] inline Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(detail::read_file(path), path.parent_path());
}

/// Command-line overrides applied on top of a parsed scenario.
struct RunOptions {
  std::optional<double> inflation;
  std::optional<int> start_level;
  std::optional<int> max_level;
  /// Write measured traversal times into stats.csv instead of 0.
  bool timing = false;
};

inline void apply_overrides(Scenario& s, const RunOptions& opt) {
  if (opt.inflation) s.terrain.cull.inflation = *opt.inflation;
  if (opt.start_level) s.terrain.start_level = *opt.start_level;
  if (opt.max_level) s.terrain.max_level = *opt.max_level;
  detail::guarded("--overrides", [&] { s.terrain.validate(); });
}

[[nodiscard]] inline MinMaxPyramid load_terrain(const Scenario& s) {
  HeightField hf = s.heightfield.path ? load_heightfield(*s.heightfield.path) : synth_heightfield(s.heightfield.synth);
  return build_minmax_pyramid(std::move(hf), s.terrain);
}

[[nodiscard]] inline TerrainConfig method_config(const Scenario& s, Method m) {
  TerrainConfig cfg = s.terrain;
  cfg.cull.extrema_mode = m == Method::AnalyticBinPaper9 ? ExtremaMode::Paper9 : ExtremaMode::Exact;
  return cfg;
}

[[nodiscard]] inline CullMethod cull_method(Method m) {
  return m == Method::Aabb8 ? CullMethod::Aabb8 : CullMethod::AnalyticBin;
}

[[nodiscard]] inline TraversalResult run_frame(const Scenario& s, const MinMaxPyramid& pyramid, Method m, int frame,
                                               bool record = false) {
  const Frustum f = frustum_from_camera(s.cameras.at(static_cast<std::size_t>(frame)));
  return traverse(f, method_config(s, m), pyramid, s.geodetic, cull_method(m), record);
}

inline constexpr std::string_view kStatsHeader =
    "frame,method,visited,outside,inside,intersect,leaves_rendered,max_depth,elapsed_ns\n";

inline void write_stats_row(std::ostream& out, int frame, Method m, const TraversalStats& st, bool timing) {
  out << frame << ',' << to_string(m) << ',' << st.visited << ',' << st.outside << ',' << st.inside << ','
      << st.intersect << ',' << st.leaves_rendered << ',' << st.max_depth_reached << ','
      << (timing ? st.elapsed_ns : 0) << '\n';
}

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

inline std::string visible_json(const TraversalResult& r) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const GeoTile& t : r.visible) arr.push_back(t.id.str());
  return arr.dump() + "\n";
}

}  // namespace detail

/// Runs every method on every frame; writes stats.csv and
/// visible_<method>_<frame>.json into `out_dir`.
inline void run_scenario(const Scenario& s, const std::filesystem::path& out_dir, const RunOptions& opt = {}) {
  std::filesystem::create_directories(out_dir);
  const MinMaxPyramid pyramid = load_terrain(s);
  std::ostringstream stats;
  stats << kStatsHeader;
  for (int frame = 0; frame < static_cast<int>(s.cameras.size()); ++frame) {
    for (Method m : s.methods) {
      const TraversalResult r = run_frame(s, pyramid, m, frame);
      write_stats_row(stats, frame, m, r.stats, opt.timing);
      detail::write_text(out_dir / ("visible_" + std::string(to_string(m)) + "_" + std::to_string(frame) + ".json"),
                         detail::visible_json(r));
    }
  }
  detail::write_text(out_dir / "stats.csv", stats.str());
}

struct CompareSummary {
  std::vector<MethodRun> runs;
  /// Reports of methods[k] (B) against methods[0] (A), k >= 1.
  std::vector<ComparisonReport> reports;
  /// Oracle-flagged OUTSIDE claims per method, in scenario order.
  std::vector<std::uint64_t> unsound;
  /// Nine-point vs exact per-plane gap over each analytic method's tiles.
  std::vector<std::optional<PlaneModeGap>> plane_gap;
  std::uint64_t unsound_exact = 0;
};

/// Runs all methods with the sampling oracle and writes
/// compare_<k>_<A>_vs_<B>.json / .csv plus stats.csv into `out_dir`.
inline CompareSummary compare_scenario(const Scenario& s, const std::filesystem::path& out_dir,
                                       const RunOptions& opt = {}) {
  if (s.methods.size() < 2) throw ScenarioError("$.methods", "compare needs at least two methods");
  if (!s.oracle_enabled) throw ScenarioError("$.oracle.enabled", "compare needs the sampling oracle");
  std::filesystem::create_directories(out_dir);
  const MinMaxPyramid pyramid = load_terrain(s);

  CompareSummary sum;
  std::vector<Frustum> frusta;
  for (const CameraPose& c : s.cameras) frusta.push_back(frustum_from_camera(c));

  std::ostringstream stats;
  stats << kStatsHeader;
  sum.runs.resize(s.methods.size());
  sum.plane_gap.resize(s.methods.size());
  for (std::size_t k = 0; k < s.methods.size(); ++k) {
    sum.runs[k].method = std::string(to_string(s.methods[k]));
    if (s.methods[k] != Method::Aabb8) sum.plane_gap[k] = PlaneModeGap{};
  }
  for (int frame = 0; frame < static_cast<int>(s.cameras.size()); ++frame) {
    for (std::size_t k = 0; k < s.methods.size(); ++k) {
      TraversalResult r = run_frame(s, pyramid, s.methods[k], frame, true);
      write_stats_row(stats, frame, s.methods[k], r.stats, opt.timing);
      if (sum.plane_gap[k]) {
        *sum.plane_gap[k] += plane_mode_gap(r.records, frusta[static_cast<std::size_t>(frame)], s.geodetic,
                                            s.terrain.cull.inflation);
      }
      sum.runs[k].frames.push_back({frame, r.stats, std::move(r.records)});
    }
  }
  detail::write_text(out_dir / "stats.csv", stats.str());

  // One oracle cache per frame, shared by all method pairs.
  std::vector<std::map<TileId, Classification>> cache(s.cameras.size());
  const Mapping sphere = Mapping::sphere(s.geodetic);
  const TileOracle oracle = [&](int frame, const GeoTile& tile) {
    auto& c = cache[static_cast<std::size_t>(frame)];
    if (auto it = c.find(tile.id); it != c.end()) return it->second;
    const TileBin tb = tile_bin(tile, s.geodetic);
    const Classification v = sample_oracle(sphere, tb.x0, tb.offsets, frusta[static_cast<std::size_t>(frame)], s.lattice);
    c.emplace(tile.id, v);
    return v;
  };

  sum.unsound.assign(s.methods.size(), 0);
  for (std::size_t k = 1; k < s.methods.size(); ++k) {
    ComparisonReport rep = compare_classifications(sum.runs[0], sum.runs[k], oracle);
    sum.unsound[0] = rep.unsound_a;
    sum.unsound[k] = rep.unsound_b;
    const std::string stem = "compare_" + std::to_string(k) + "_" + rep.method_a + "_vs_" + rep.method_b;
    auto j = to_json(rep);
    j["scenario"] = s.name;
    j["seed"] = s.seed;
    j["inflation"] = s.terrain.cull.inflation;
    for (std::size_t m : {std::size_t{0}, k}) {
      if (sum.plane_gap[m]) {
        nlohmann::ordered_json g;
        g["tests"] = sum.plane_gap[m]->tests;
        g["disagreements"] = sum.plane_gap[m]->disagreements;
        g["wrong_direction"] = sum.plane_gap[m]->wrong_direction;
        g["fraction"] = sum.plane_gap[m]->fraction();
        j["plane_mode_gap"][sum.runs[m].method] = g;
      }
    }
    detail::write_text(out_dir / (stem + ".json"), j.dump(2) + "\n");
    detail::write_text(out_dir / (stem + ".csv"), to_csv(rep));
    sum.reports.push_back(std::move(rep));
  }
  for (std::size_t k = 0; k < s.methods.size(); ++k) {
    if (s.methods[k] == Method::AnalyticBinExact) sum.unsound_exact += sum.unsound[k];
  }
  return sum;
}

}  // namespace abin
