#pragma once

// Embedded invariant suites run by `abin selftest`.

#include "abin/baseline.hpp"
#include "abin/random_cases.hpp"
#include "abin/terrain.hpp"

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace abin {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline SuiteResult suite_jet_fd(std::uint64_t seed) {
  cases::Rng rng(seed);
  const GeodeticParams geo{};
  const Mapping sphere = Mapping::sphere(geo);
  double worst = 0.0, worst_identity = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vec3 X{cases::uniform(rng, geo.radius, geo.radius + 9000), cases::uniform(rng, -kPi / 2, kPi / 2),
                 cases::uniform(rng, -kPi, kPi)};
    worst = std::max(worst, jet_fd_check(sphere, X, 1e-4));
    worst_identity = std::max(worst_identity, jet_fd_check(Mapping::identity(), cases::uniform_vec(rng, -10, 10), 1e-5));
  }
  std::ostringstream d;
  d << "max relative error sphere " << worst << ", identity " << worst_identity;
  return {"jet_fd", worst <= 1e-6 && worst_identity <= 1e-9, d.str()};
}

inline SuiteResult suite_extrema_dominance(std::uint64_t seed) {
  cases::Rng rng(seed + 1);
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const ScalarQuadratic q = cases::quadratic(rng);
    const Box3 b = cases::box(rng);
    const Extrema ex = box_extrema_exact(q, b);
    const Extrema p9 = box_extrema_paper9(q, b);
    const Extrema gr = box_extrema_grid(q, b, 11);
    const double eps = 1e-12 * (1.0 + std::abs(ex.min_val) + std::abs(ex.max_val));
    if (ex.min_val > p9.min_val + eps || p9.max_val > ex.max_val + eps) ++violations;
    if (ex.min_val > gr.min_val + eps || gr.max_val > ex.max_val + eps) ++violations;
  }
  return {"extrema_dominance", violations == 0, std::to_string(violations) + " violations in 200 cases"};
}

inline SuiteResult suite_identity_equivalence(std::uint64_t seed) {
  cases::Rng rng(seed + 2);
  int mismatches = 0;
  const CullConfig cfg{1.0, ExtremaMode::Exact};
  for (int k = 0; k < 300; ++k) {
    const CameraPose pose = cases::pose(rng);
    const Frustum f = frustum_from_camera(pose);
    const Box3 b = cases::box_near(rng, pose);
    const Vec3 c = b.center();
    const Classification analytic = classify_bin(identity_jet(c), Box3(b.lo - c, b.hi - c), f, cfg);
    const Classification corners = classify_aabb8(Aabb3{b.lo, b.hi}, f);
    if (analytic != corners) ++mismatches;
  }
  return {"identity_equivalence", mismatches == 0, std::to_string(mismatches) + " mismatches in 300 cases"};
}

inline SuiteResult suite_pyramid_soundness(std::uint64_t seed) {
  cases::Rng rng(seed + 3);
  SynthSpec spec;
  spec.rows = 65;
  spec.cols = 129;
  HeightField hf = synth_heightfield(spec);
  for (double& v : hf.samples) v = cases::uniform(rng, -500, 9000);
  TerrainConfig cfg;
  cfg.start_level = 1;
  cfg.max_level = 4;
  const MinMaxPyramid pyr = build_minmax_pyramid(hf, cfg);
  int violations = 0;
  for (int level = cfg.start_level; level <= cfg.max_level; ++level) {
    for (std::uint32_t i = 0; i < lat_divisions(level); ++i) {
      for (std::uint32_t j = 0; j < lon_divisions(level); ++j) {
        const GeoTile t = pyr.tile({level, i, j});
        for (int r = 0; r < hf.rows; ++r) {
          for (int c = 0; c < hf.cols; ++c) {
            if (t.lat.contains(hf.lat_of_row(r)) && t.lon.contains(hf.lon_of_col(c)) && !t.h.contains(hf.at(r, c))) {
              ++violations;
            }
          }
        }
        if (level < cfg.max_level) {
          Interval hull{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
          for (const GeoTile& k : subdivide(t, pyr)) hull = {std::min(hull.lo, k.h.lo), std::max(hull.hi, k.h.hi)};
          if (!(hull == t.h)) ++violations;
        }
      }
    }
  }
  return {"pyramid_soundness", violations == 0, std::to_string(violations) + " violations"};
}

inline SuiteResult suite_frustum_interior(std::uint64_t seed) {
  cases::Rng rng(seed + 4);
  int violations = 0;
  for (int k = 0; k < 300; ++k) {
    const CameraPose pose = cases::pose(rng);
    const Frustum f = frustum_from_camera(pose);
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& c : f.corners) centroid += c / 8.0;
    if (!frustum_contains_point(f, centroid)) ++violations;
    for (const Vec3& c : f.corners) {
      int incident = 0;
      for (const Plane& p : f.planes) {
        if (std::abs(signed_distance(p, c)) <= 1e-6 * pose.far) ++incident;
      }
      if (incident < 3) ++violations;
    }
  }
  return {"frustum_interior", violations == 0, std::to_string(violations) + " violations in 300 poses"};
}

inline SuiteResult suite_inflation_monotonicity(std::uint64_t seed) {
  cases::Rng rng(seed + 5);
  const GeodeticParams geo{};
  int violations = 0;
  for (int k = 0; k < 300; ++k) {
    CameraPose pose;
    const Vec3 dir = cases::unit_vec(rng);
    pose.eye = dir * (geo.radius + cases::uniform(rng, 2e5, 6e6));
    Vec3 look = (-dir + 0.6 * cases::unit_vec(rng)).normalized();
    pose.look_dir = look;
    pose.up_hint = std::abs(look.dot(Vec3::UnitY())) < 0.9 ? Vec3::UnitY() : Vec3::UnitX();
    pose.fov_y = cases::uniform(rng, 0.3, 1.5);
    pose.near = 1000;
    pose.far = cases::uniform(rng, 1e6, 2e7);
    const Frustum f = frustum_from_camera(pose);
    const double half = cases::uniform(rng, 0.005, 0.1);
    const Vec3 x0{geo.radius + cases::uniform(rng, 0, 9000), cases::uniform(rng, -1.4, 1.4), cases::uniform(rng, -3, 3)};
    const Box3 bin = Box3::centered(Vec3::Zero(), {cases::uniform(rng, 0, 4500), half, half});
    const MapJet jet = sphere_jet(geo, x0);
    const Classification wide = classify_bin(jet, bin, f, {1.1, ExtremaMode::Exact});
    const Classification tight = classify_bin(jet, bin, f, {1.0, ExtremaMode::Exact});
    if (wide == Classification::Outside && tight == Classification::Inside) ++violations;
    if (wide == Classification::Inside && tight != Classification::Inside) ++violations;
  }
  return {"inflation_monotonicity", violations == 0, std::to_string(violations) + " violations in 300 bins"};
}

}  // namespace detail

[[nodiscard]] inline std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
  return {detail::suite_jet_fd(seed),
          detail::suite_extrema_dominance(seed),
          detail::suite_identity_equivalence(seed),
          detail::suite_pyramid_soundness(seed),
          detail::suite_frustum_interior(seed),
          detail::suite_inflation_monotonicity(seed)};
}

}  // namespace abin
