#pragma once

// Side-by-side comparison of two traversal methods against the sampling
// oracle, plus the per-plane nine-point vs exact extrema gap.

#include "abin/terrain.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abin {

class HarnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct FrameRun {
  int frame = 0;
  TraversalStats stats;
  std::vector<TileRecord> records;
};

struct MethodRun {
  std::string method;
  std::vector<FrameRun> frames;
};

/// Ground truth for one tile of one frame.
using TileOracle = std::function<Classification(int frame, const GeoTile& tile)>;

struct Disagreement {
  int frame = 0;
  TileId tile;
  std::string method;
  Classification claimed = Classification::Intersect;
  Classification oracle = Classification::Intersect;
  /// Claimed OUTSIDE while the oracle found a contained sample.
  bool unsound = false;
};

using PairTable = std::array<std::array<std::uint64_t, 3>, 3>;

struct FrameComparison {
  int frame = 0;
  PairTable pairs{};
  std::uint64_t intersect_a = 0;
  std::uint64_t intersect_b = 0;
  /// intersect_b / intersect_a; absent when intersect_a is zero.
  std::optional<double> ratio;
  /// Some tile was culled and some tile survived, under either method.
  bool partial_coverage = false;
  std::uint64_t unsound_a = 0;
  std::uint64_t unsound_b = 0;
};

struct CsvRow {
  int frame = 0;
  TileId tile;
  std::optional<Classification> a, b, oracle;
};

struct ComparisonReport {
  std::string method_a;
  std::string method_b;
  std::vector<FrameComparison> frames;
  PairTable totals{};
  std::vector<Disagreement> disagreements;
  std::uint64_t unsound_a = 0;
  std::uint64_t unsound_b = 0;
  std::vector<CsvRow> rows;

  /// Mean per-frame ratio over frames with partial coverage and a defined ratio.
  [[nodiscard]] std::optional<double> mean_partial_ratio() const {
    double sum = 0.0;
    int n = 0;
    for (const auto& f : frames) {
      if (f.partial_coverage && f.ratio) {
        sum += *f.ratio;
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return sum / n;
  }
};

[[nodiscard]] inline int state_index(Classification c) { return static_cast<int>(c); }

/// Tabulates (A, B) state pairs over tiles classified by both runs and runs the
/// oracle on every OUTSIDE or INSIDE claim. Both runs must cover the same
/// frames and the same start-level tiles.
[[nodiscard]] inline ComparisonReport compare_classifications(const MethodRun& a, const MethodRun& b,
                                                              const TileOracle& oracle) {
  if (a.frames.size() != b.frames.size()) throw HarnessError("compare: runs cover different frame counts");
  ComparisonReport rep;
  rep.method_a = a.method;
  rep.method_b = b.method;

  for (std::size_t f = 0; f < a.frames.size(); ++f) {
    const FrameRun& fa = a.frames[f];
    const FrameRun& fb = b.frames[f];
    if (fa.frame != fb.frame) throw HarnessError("compare: frame sequences differ");

    std::map<TileId, std::pair<std::optional<Classification>, std::optional<Classification>>> states;
    std::map<TileId, GeoTile> tiles;
    int start_level = std::numeric_limits<int>::max();
    for (const auto& r : fa.records) start_level = std::min(start_level, r.tile.id.level);
    for (const auto& r : fa.records) {
      states[r.tile.id].first = r.state;
      tiles.emplace(r.tile.id, r.tile);
    }
    for (const auto& r : fb.records) {
      states[r.tile.id].second = r.state;
      tiles.emplace(r.tile.id, r.tile);
    }
    for (const auto& [id, s] : states) {
      if (id.level == start_level && (!s.first || !s.second)) {
        throw HarnessError("compare: start-level tile sets differ in frame " + std::to_string(fa.frame));
      }
    }

    FrameComparison fc;
    fc.frame = fa.frame;
    fc.intersect_a = fa.stats.intersect;
    fc.intersect_b = fb.stats.intersect;
    if (fc.intersect_a > 0) fc.ratio = static_cast<double>(fc.intersect_b) / static_cast<double>(fc.intersect_a);
    fc.partial_coverage = (fa.stats.outside > 0 || fb.stats.outside > 0) &&
                          (fa.stats.leaves_rendered > 0 || fb.stats.leaves_rendered > 0);

    for (const auto& [id, s] : states) {
      CsvRow row{fa.frame, id, s.first, s.second, std::nullopt};
      if (s.first && s.second) {
        ++fc.pairs[static_cast<std::size_t>(state_index(*s.first))][static_cast<std::size_t>(state_index(*s.second))];
      }
      const bool needs_oracle = (s.first && *s.first != Classification::Intersect) ||
                                (s.second && *s.second != Classification::Intersect);
      if (needs_oracle) {
        const Classification truth = oracle(fa.frame, tiles.at(id));
        row.oracle = truth;
        auto check = [&](const std::optional<Classification>& claim, const std::string& method,
                         std::uint64_t& unsound) {
          if (!claim || *claim == Classification::Intersect || *claim == truth) return;
          const bool bad = *claim == Classification::Outside;
          if (bad) ++unsound;
          rep.disagreements.push_back({fa.frame, id, method, *claim, truth, bad});
        };
        check(s.first, a.method, fc.unsound_a);
        check(s.second, b.method, fc.unsound_b);
      }
      rep.rows.push_back(row);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) rep.totals[i][j] += fc.pairs[i][j];
    }
    rep.unsound_a += fc.unsound_a;
    rep.unsound_b += fc.unsound_b;
    rep.frames.push_back(fc);
  }
  return rep;
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const ComparisonReport& rep) {
  using nlohmann::ordered_json;
  auto table = [](const PairTable& t) {
    ordered_json j = ordered_json::object();
    for (int a = 0; a < 3; ++a) {
      ordered_json row = ordered_json::object();
      for (int b = 0; b < 3; ++b) {
        row[std::string(to_string(static_cast<Classification>(b)))] = t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
      j[std::string(to_string(static_cast<Classification>(a)))] = row;
    }
    return j;
  };
  ordered_json j;
  j["method_a"] = rep.method_a;
  j["method_b"] = rep.method_b;
  j["unsound_a"] = rep.unsound_a;
  j["unsound_b"] = rep.unsound_b;
  const auto mean = rep.mean_partial_ratio();
  j["mean_partial_intersect_ratio"] = mean ? ordered_json(*mean) : ordered_json(nullptr);
  j["totals"] = table(rep.totals);
  ordered_json frames = ordered_json::array();
  for (const auto& f : rep.frames) {
    ordered_json fj;
    fj["frame"] = f.frame;
    fj["intersect_a"] = f.intersect_a;
    fj["intersect_b"] = f.intersect_b;
    fj["ratio"] = f.ratio ? ordered_json(*f.ratio) : ordered_json(nullptr);
    fj["partial_coverage"] = f.partial_coverage;
    fj["unsound_a"] = f.unsound_a;
    fj["unsound_b"] = f.unsound_b;
    fj["pairs"] = table(f.pairs);
    frames.push_back(std::move(fj));
  }
  j["frames"] = std::move(frames);
  ordered_json dis = ordered_json::array();
  for (const auto& d : rep.disagreements) {
    ordered_json dj;
    dj["frame"] = d.frame;
    dj["tile"] = d.tile.str();
    dj["method"] = d.method;
    dj["claimed"] = to_string(d.claimed);
    dj["oracle"] = to_string(d.oracle);
    dj["unsound"] = d.unsound;
    dis.push_back(std::move(dj));
  }
  j["disagreements"] = std::move(dis);
  return j;
}

[[nodiscard]] inline std::string to_csv(const ComparisonReport& rep) {
  auto cell = [](const std::optional<Classification>& c) { return c ? std::string(to_string(*c)) : std::string(); };
  std::ostringstream out;
  out << "frame,tile,state_a,state_b,oracle,unsound_a,unsound_b\n";
  for (const auto& r : rep.rows) {
    const bool ua = r.a == Classification::Outside && r.oracle && *r.oracle != Classification::Outside;
    const bool ub = r.b == Classification::Outside && r.oracle && *r.oracle != Classification::Outside;
    out << r.frame << ',' << r.tile.str() << ',' << cell(r.a) << ',' << cell(r.b) << ',' << cell(r.oracle) << ','
        << (ua ? 1 : 0) << ',' << (ub ? 1 : 0) << '\n';
  }
  return out.str();
}

/// Plane tests where nine-point and exact extrema give different states.
struct PlaneModeGap {
  std::uint64_t tests = 0;
  std::uint64_t disagreements = 0;
  /// Disagreements other than exact STRADDLES vs nine-point FULLY_*.
  std::uint64_t wrong_direction = 0;

  PlaneModeGap& operator+=(const PlaneModeGap& o) {
    tests += o.tests;
    disagreements += o.disagreements;
    wrong_direction += o.wrong_direction;
    return *this;
  }
  [[nodiscard]] double fraction() const { return tests ? static_cast<double>(disagreements) / tests : 0.0; }
};

[[nodiscard]] inline PlaneModeGap plane_mode_gap(const std::vector<TileRecord>& records, const Frustum& frustum,
                                                 const GeodeticParams& params, double inflation) {
  PlaneModeGap gap;
  for (const auto& rec : records) {
    const TileBin tb = tile_bin(rec.tile, params);
    const MapJet jet = sphere_jet(params, tb.x0);
    const auto p9 = plane_states(jet, tb.offsets, frustum, inflation, ExtremaMode::Paper9);
    const auto ex = plane_states(jet, tb.offsets, frustum, inflation, ExtremaMode::Exact);
    for (std::size_t k = 0; k < 6; ++k) {
      ++gap.tests;
      if (p9[k] == ex[k]) continue;
      ++gap.disagreements;
      if (ex[k] != PlaneState::Straddles) ++gap.wrong_direction;
    }
  }
  return gap;
}

}  // namespace abin
