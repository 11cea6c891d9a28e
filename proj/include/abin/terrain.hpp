#pragma once

// Geodetic tile quadtree: a 2^L x 2^(L+1) latitude/longitude grid per level,
// per-tile height extremes, and recursive frustum traversal.

#include "abin/baseline.hpp"
#include "abin/bin_cull.hpp"
#include "abin/heightfield.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace abin {

struct TileId {
  int level = 0;
  std::uint32_t i = 0;  // latitude index, counted from the southern edge
  std::uint32_t j = 0;  // longitude index, counted from the western edge

  [[nodiscard]] std::string str() const {
    return std::to_string(level) + "/" + std::to_string(i) + "/" + std::to_string(j);
  }
  friend bool operator==(const TileId&, const TileId&) = default;
  friend auto operator<=>(const TileId&, const TileId&) = default;
};

struct GeoTile {
  TileId id;
  Interval lat;
  Interval lon;
  Interval h;
};

struct TerrainConfig {
  int start_level = 4;
  int max_level = 7;
  Interval root_lat{-kPi / 2, kPi / 2};
  Interval root_lon{-kPi, kPi};
  Interval altitude{kMinHeight, kMaxHeight};
  CullConfig cull{};
  /// Worker threads for traversal; results do not depend on this.
  int threads = 1;

  void validate() const {
    if (!(0 <= start_level && start_level <= max_level && max_level <= 24)) {
      throw InvalidArgument("TerrainConfig: need 0 <= start_level <= max_level <= 24");
    }
    if (!(root_lat.lo < root_lat.hi && root_lat.lo >= -kPi / 2 && root_lat.hi <= kPi / 2)) {
      throw InvalidArgument("TerrainConfig: root latitude range must be a nonempty subset of [-pi/2, pi/2]");
    }
    if (!(root_lon.lo < root_lon.hi && root_lon.lo >= -kPi && root_lon.hi <= kPi)) {
      throw InvalidArgument("TerrainConfig: root longitude range must be a nonempty subset of [-pi, pi]");
    }
    if (!(altitude.lo <= altitude.hi)) throw InvalidArgument("TerrainConfig: altitude clamp is empty");
    if (threads < 1) throw InvalidArgument("TerrainConfig: threads must be positive");
    cull.validate();
  }
};

[[nodiscard]] inline std::uint32_t lat_divisions(int level) { return std::uint32_t{1} << level; }
[[nodiscard]] inline std::uint32_t lon_divisions(int level) { return std::uint32_t{1} << (level + 1); }

/// Rectangle of tile (level, i, j). Child edges reuse the parent's edge values
/// bit-for-bit because k / 2^L is exact.
[[nodiscard]] inline GeoTile tile_rect(const TerrainConfig& cfg, const TileId& id) {
  const double nlat = lat_divisions(id.level);
  const double nlon = lon_divisions(id.level);
  auto edge = [](const Interval& root, double k, double n) { return root.lo + root.width() * (k / n); };
  GeoTile t;
  t.id = id;
  t.lat = {edge(cfg.root_lat, id.i, nlat), edge(cfg.root_lat, id.i + 1.0, nlat)};
  t.lon = {edge(cfg.root_lon, id.j, nlon), edge(cfg.root_lon, id.j + 1.0, nlon)};
  return t;
}

/// Per-tile height extremes. Levels start..max are tabulated; tiles holding
/// no sample get [0, 0] and are counted in `empty_tiles`.
class MinMaxPyramid {
 public:
  MinMaxPyramid() = default;

  MinMaxPyramid(std::shared_ptr<const HeightField> hf, const TerrainConfig& cfg) : hf_(std::move(hf)), cfg_(cfg) {
    cfg_.validate();
    hf_->validate();
    if (lat_divisions(cfg_.max_level) * std::uint64_t{lon_divisions(cfg_.max_level)} > (std::uint64_t{1} << 24)) {
      throw InvalidArgument("MinMaxPyramid: max_level too deep for a tabulated pyramid");
    }
    for (int level = cfg_.start_level; level <= cfg_.max_level; ++level) {
      const std::uint32_t nlat = lat_divisions(level), nlon = lon_divisions(level);
      std::vector<Interval> table(static_cast<std::size_t>(nlat) * nlon);
      for (std::uint32_t i = 0; i < nlat; ++i) {
        for (std::uint32_t j = 0; j < nlon; ++j) {
          bool any = false;
          Interval h = query(tile_rect(cfg_, {level, i, j}), any);
          if (!any) {
            h = {0.0, 0.0};
            ++empty_tiles_;
          }
          table[static_cast<std::size_t>(i) * nlon + j] = clamp(h);
        }
      }
      levels_.push_back(std::move(table));
    }
  }

  [[nodiscard]] Interval interval(const TileId& id) const {
    if (id.level < cfg_.start_level || id.level > cfg_.max_level) {
      throw InvalidArgument("MinMaxPyramid: level " + std::to_string(id.level) + " not tabulated");
    }
    const auto& table = levels_[static_cast<std::size_t>(id.level - cfg_.start_level)];
    return table[static_cast<std::size_t>(id.i) * lon_divisions(id.level) + id.j];
  }

  [[nodiscard]] GeoTile tile(const TileId& id) const {
    GeoTile t = tile_rect(cfg_, id);
    t.h = interval(id);
    return t;
  }

  [[nodiscard]] const TerrainConfig& config() const { return cfg_; }
  [[nodiscard]] const HeightField& heightfield() const { return *hf_; }
  [[nodiscard]] std::size_t empty_tiles() const { return empty_tiles_; }

 private:
  // Samples whose node lies in the closed rectangle; index bounds are widened
  // by a small slack so boundary nodes land in both neighbours.
  Interval query(const GeoTile& t, bool& any) const {
    const HeightField& hf = *hf_;
    constexpr double slack = 1e-9;
    int r0 = 0, r1 = 0, c0 = 0, c1 = 0;
    if (hf.rows == 1) {
      if (!(t.lat.lo <= hf.lat_bounds.hi && hf.lat_bounds.hi <= t.lat.hi)) return {};
    } else {
      const double step = hf.lat_bounds.width() / (hf.rows - 1);
      r0 = static_cast<int>(std::max(0.0, std::ceil((hf.lat_bounds.hi - t.lat.hi) / step - slack)));
      r1 = static_cast<int>(std::min<double>(hf.rows - 1, std::floor((hf.lat_bounds.hi - t.lat.lo) / step + slack)));
    }
    if (hf.cols == 1) {
      if (!(t.lon.lo <= hf.lon_bounds.lo && hf.lon_bounds.lo <= t.lon.hi)) return {};
    } else {
      const double step = hf.lon_bounds.width() / (hf.cols - 1);
      c0 = static_cast<int>(std::max(0.0, std::ceil((t.lon.lo - hf.lon_bounds.lo) / step - slack)));
      c1 = static_cast<int>(std::min<double>(hf.cols - 1, std::floor((t.lon.hi - hf.lon_bounds.lo) / step + slack)));
    }
    Interval h{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const double v = hf.at(r, c);
        h.lo = std::min(h.lo, v);
        h.hi = std::max(h.hi, v);
        any = true;
      }
    }
    return h;
  }

  Interval clamp(Interval h) const {
    h.lo = std::clamp(h.lo, cfg_.altitude.lo, cfg_.altitude.hi);
    h.hi = std::clamp(h.hi, cfg_.altitude.lo, cfg_.altitude.hi);
    return h;
  }

  std::shared_ptr<const HeightField> hf_;
  TerrainConfig cfg_{};
  std::vector<std::vector<Interval>> levels_;
  std::size_t empty_tiles_ = 0;
};

[[nodiscard]] inline MinMaxPyramid build_minmax_pyramid(HeightField hf, const TerrainConfig& cfg) {
  return MinMaxPyramid(std::make_shared<const HeightField>(std::move(hf)), cfg);
}

/// The start-level grid. Without a pyramid the h intervals are [0, 0].
[[nodiscard]] inline std::vector<GeoTile> root_tiles(const TerrainConfig& cfg, const MinMaxPyramid* pyramid = nullptr) {
  cfg.validate();
  std::vector<GeoTile> out;
  const int level = cfg.start_level;
  out.reserve(static_cast<std::size_t>(lat_divisions(level)) * lon_divisions(level));
  for (std::uint32_t i = 0; i < lat_divisions(level); ++i) {
    for (std::uint32_t j = 0; j < lon_divisions(level); ++j) {
      out.push_back(pyramid ? pyramid->tile({level, i, j}) : tile_rect(cfg, {level, i, j}));
    }
  }
  return out;
}

/// Children in (i, j) order: (2i, 2j), (2i, 2j+1), (2i+1, 2j), (2i+1, 2j+1).
[[nodiscard]] inline std::array<GeoTile, 4> subdivide(const GeoTile& tile, const MinMaxPyramid& pyramid) {
  if (tile.id.level >= pyramid.config().max_level) {
    throw InvalidArgument("subdivide: tile " + tile.id.str() + " is already at max_level");
  }
  std::array<GeoTile, 4> kids;
  int k = 0;
  for (std::uint32_t a = 0; a < 2; ++a) {
    for (std::uint32_t b = 0; b < 2; ++b) {
      kids[static_cast<std::size_t>(k++)] = pyramid.tile({tile.id.level + 1, 2 * tile.id.i + a, 2 * tile.id.j + b});
    }
  }
  return kids;
}

/// Expansion point (bin center in (r, lat, lon)) and the bin as offsets about it.
struct TileBin {
  Vec3 x0;
  Box3 offsets;
};

[[nodiscard]] inline TileBin tile_bin(const GeoTile& tile, const GeodeticParams& params) {
  const Vec3 x0{params.radius + tile.h.mid(), tile.lat.mid(), tile.lon.mid()};
  const Vec3 half{0.5 * tile.h.width(), 0.5 * tile.lat.width(), 0.5 * tile.lon.width()};
  return {x0, Box3::centered(Vec3::Zero(), half)};
}

enum class CullMethod { AnalyticBin, Aabb8 };

[[nodiscard]] inline Classification classify_tile(const GeoTile& tile, const Frustum& frustum,
                                                  const GeodeticParams& params, CullMethod method,
                                                  const CullConfig& cull) {
  const TileBin tb = tile_bin(tile, params);
  if (method == CullMethod::AnalyticBin) return classify_bin(sphere_jet(params, tb.x0), tb.offsets, frustum, cull);
  return classify_aabb8(world_aabb_of_bin(Mapping::sphere(params), tb.x0, tb.offsets), frustum);
}

struct TraversalStats {
  std::uint64_t visited = 0;
  std::uint64_t outside = 0;
  std::uint64_t inside = 0;
  std::uint64_t intersect = 0;
  std::uint64_t leaves_rendered = 0;
  int max_depth_reached = 0;
  std::int64_t elapsed_ns = 0;

  TraversalStats& operator+=(const TraversalStats& o) {
    visited += o.visited;
    outside += o.outside;
    inside += o.inside;
    intersect += o.intersect;
    leaves_rendered += o.leaves_rendered;
    max_depth_reached = std::max(max_depth_reached, o.max_depth_reached);
    return *this;
  }
};

struct TileRecord {
  GeoTile tile;
  Classification state = Classification::Intersect;
};

struct TraversalResult {
  std::vector<GeoTile> visible;
  TraversalStats stats;
  /// Every classified tile in traversal order; filled only when requested.
  std::vector<TileRecord> records;
};

namespace detail {

struct TraversalContext {
  const Frustum& frustum;
  const MinMaxPyramid& pyramid;
  const GeodeticParams& params;
  const TerrainConfig& cfg;
  CullMethod method;
  bool record;
};

inline void traverse_tile(const TraversalContext& ctx, const GeoTile& tile, TraversalResult& out) {
  const Classification c = classify_tile(tile, ctx.frustum, ctx.params, ctx.method, ctx.cfg.cull);
  auto& s = out.stats;
  ++s.visited;
  s.max_depth_reached = std::max(s.max_depth_reached, tile.id.level);
  if (ctx.record) out.records.push_back({tile, c});
  switch (c) {
    case Classification::Outside: ++s.outside; return;
    case Classification::Inside:
      ++s.inside;
      out.visible.push_back(tile);
      ++s.leaves_rendered;
      return;
    case Classification::Intersect:
      ++s.intersect;
      if (tile.id.level < ctx.cfg.max_level) {
        for (const GeoTile& child : subdivide(tile, ctx.pyramid)) traverse_tile(ctx, child, out);
      } else {
        out.visible.push_back(tile);
        ++s.leaves_rendered;
      }
      return;
  }
}

}  // namespace detail

/// Recursive visibility traversal from the start-level grid. OUTSIDE prunes,
/// INSIDE accepts the whole subtree untested, INTERSECT recurses until
/// max_level. Output order is the sequential depth-first order for any thread
/// count. `cfg` selects levels and culling; the pyramid must tabulate them.
[[nodiscard]] inline TraversalResult traverse(const Frustum& frustum, const TerrainConfig& cfg,
                                              const MinMaxPyramid& pyramid, const GeodeticParams& params,
                                              CullMethod method, bool record = false) {
  cfg.validate();
  params.validate();
  const TerrainConfig& pcfg = pyramid.config();
  if (cfg.start_level < pcfg.start_level || cfg.max_level > pcfg.max_level || !(cfg.root_lat == pcfg.root_lat) ||
      !(cfg.root_lon == pcfg.root_lon)) {
    throw InvalidArgument("traverse: pyramid does not cover the requested levels and root ranges");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<GeoTile> roots = root_tiles(cfg, &pyramid);
  const detail::TraversalContext ctx{frustum, pyramid, params, cfg, method, record};

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), roots.size());
  std::vector<TraversalResult> parts(std::max<std::size_t>(workers, 1));
  auto run_chunk = [&](std::size_t w) {
    const std::size_t begin = roots.size() * w / parts.size();
    const std::size_t end = roots.size() * (w + 1) / parts.size();
    for (std::size_t k = begin; k < end; ++k) detail::traverse_tile(ctx, roots[k], parts[w]);
  };
  if (parts.size() == 1) {
    run_chunk(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < parts.size(); ++w) jobs.push_back(std::async(std::launch::async, run_chunk, w));
    for (auto& j : jobs) j.get();
  }

  TraversalResult out = std::move(parts.front());
  for (std::size_t w = 1; w < parts.size(); ++w) {
    out.stats += parts[w].stats;
    out.visible.insert(out.visible.end(), parts[w].visible.begin(), parts[w].visible.end());
    out.records.insert(out.records.end(), parts[w].records.begin(), parts[w].records.end());
  }
  out.stats.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace abin
