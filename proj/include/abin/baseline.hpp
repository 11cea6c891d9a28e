#pragma once

// The 8-corner world-space box test used as the comparison baseline, and a
// dense-sampling oracle over the true mapping.

#include "abin/bin_cull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace abin {

struct Aabb3 {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  [[nodiscard]] Vec3 corner(int c) const {
    return {(c & 1) ? hi[0] : lo[0], (c & 2) ? hi[1] : lo[1], (c & 4) ? hi[2] : lo[2]};
  }
};

/// Hull of the 8 bin corners mapped through the true mapping. For curved
/// mappings the image can bulge past this hull.
[[nodiscard]] inline Aabb3 world_aabb_of_bin(const Mapping& map, const Vec3& x0, const Box3& bin_offsets) {
  Aabb3 box{Vec3::Constant(std::numeric_limits<double>::infinity()),
            Vec3::Constant(-std::numeric_limits<double>::infinity())};
  for (int c = 0; c < 8; ++c) {
    const Vec3 p = map.value(x0 + bin_offsets.corner(c));
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  }
  return box;
}

[[nodiscard]] inline Classification classify_aabb8(const Aabb3& box, const Frustum& frustum) {
  bool all_inside = true;
  for (const Plane& plane : frustum.planes) {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < 8; ++c) {
      const double d = signed_distance(plane, box.corner(c));
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    if (dmin > 0.0) return Classification::Outside;
    if (dmax > 0.0) all_inside = false;
  }
  return all_inside ? Classification::Inside : Classification::Intersect;
}

/// Samples per parameter axis: n_lat on axis 1, n_lon on axis 2, n_r on axis 0.
struct OracleLattice {
  int n_lat = 33;
  int n_lon = 33;
  int n_r = 5;
};

/// One-sided ground truth over the UNinflated bin: a contained sample proves
/// the image is not outside; an empty sample set is evidence only. A
/// zero-width axis is sampled once.
[[nodiscard]] inline Classification sample_oracle(const Mapping& map, const Vec3& x0, const Box3& bin_offsets,
                                                  const Frustum& frustum, const OracleLattice& lattice = {}) {
  const std::array<int, 3> dims{lattice.n_r, lattice.n_lat, lattice.n_lon};
  std::array<std::vector<double>, 3> axis;
  for (int k = 0; k < 3; ++k) {
    const double lo = x0[k] + bin_offsets.lo[k];
    const double hi = x0[k] + bin_offsets.hi[k];
    const int n = lo == hi ? 1 : dims[static_cast<std::size_t>(k)];
    if (n < 1) throw InvalidArgument("sample_oracle: lattice dimensions must be positive");
    auto& a = axis[static_cast<std::size_t>(k)];
    a.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] =
          n == 1 ? lo : (i == n - 1 ? hi : lo + (hi - lo) * (static_cast<double>(i) / (n - 1)));
    }
  }

  // Sphere points factor as r * u(lat, lon); cache the trig per lattice row.
  const bool sphere = map.kind == MapKind::Sphere;
  bool any_in = false;
  bool any_out = false;
  for (double lat : axis[1]) {
    const double cp = std::cos(lat), sp = std::sin(lat);
    for (double lon : axis[2]) {
      const Vec3 u{cp * std::sin(lon), sp, cp * std::cos(lon)};
      for (double r : axis[0]) {
        const Vec3 p = sphere ? Vec3(r * u) : map.value(Vec3{r, lat, lon});
        if (frustum_contains_point(frustum, p)) {
          any_in = true;
        } else {
          any_out = true;
        }
        if (any_in && any_out) return Classification::Intersect;
      }
    }
  }
  return any_in ? Classification::Inside : Classification::Outside;
}

}  // namespace abin
