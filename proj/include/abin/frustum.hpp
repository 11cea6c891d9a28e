#pragma once

// Perspective view frustum as six outward-oriented planes.

#include "abin/types.hpp"

#include <array>
#include <cmath>
#include <string_view>

namespace abin {

/// Unit outward normal and a point on the plane.
struct Plane {
  Vec3 n = Vec3::UnitZ();
  Vec3 p0 = Vec3::Zero();
};

/// Positive outside, negative inside.
[[nodiscard]] inline double signed_distance(const Plane& plane, const Vec3& p) { return plane.n.dot(p - plane.p0); }

enum PlaneIndex : int { kNear = 0, kFar, kLeft, kRight, kTop, kBottom };

inline constexpr std::array<std::string_view, 6> kPlaneNames{"near", "far", "left", "right", "top", "bottom"};

struct Frustum {
  std::array<Plane, 6> planes{};
  Vec3 eye = Vec3::Zero();
  /// Near corners first (bl, br, tr, tl), then far corners in the same order.
  std::array<Vec3, 8> corners{};
};

struct CameraPose {
  Vec3 eye = Vec3::Zero();
  Vec3 look_dir = -Vec3::UnitZ();
  Vec3 up_hint = Vec3::UnitY();
  double fov_y = kPi / 2;
  double aspect = 1.0;
  double near = 1.0;
  double far = 100.0;

  void validate() const {
    if (!eye.allFinite()) throw InvalidArgument("CameraPose: eye must be finite");
    if (!(std::abs(look_dir.norm() - 1.0) < 1e-9)) throw InvalidArgument("CameraPose: look_dir must be a unit vector");
    if (!(std::abs(up_hint.norm() - 1.0) < 1e-9)) throw InvalidArgument("CameraPose: up_hint must be a unit vector");
    if (!(std::abs(look_dir.dot(up_hint)) < 1.0 - 1e-9)) {
      throw InvalidArgument("CameraPose: look_dir and up_hint are collinear");
    }
    if (!(fov_y > 0.0 && fov_y < kPi)) throw InvalidArgument("CameraPose: fov_y must lie in (0, pi)");
    if (!(aspect > 0.0) || !std::isfinite(aspect)) throw InvalidArgument("CameraPose: aspect must be positive");
    if (!(near > 0.0)) throw InvalidArgument("CameraPose: near must be positive");
    if (!(far > near) || !std::isfinite(far)) throw InvalidArgument("CameraPose: far must exceed near");
  }
};

[[nodiscard]] inline Frustum frustum_from_camera(const CameraPose& pose) {
  pose.validate();
  const Vec3 fwd = pose.look_dir.normalized();
  const Vec3 right = fwd.cross(pose.up_hint).normalized();
  const Vec3 up = right.cross(fwd);
  const double th = std::tan(0.5 * pose.fov_y);
  const double tw = pose.aspect * th;

  Frustum f;
  f.eye = pose.eye;
  f.planes[kNear] = {-fwd, pose.eye + pose.near * fwd};
  f.planes[kFar] = {fwd, pose.eye + pose.far * fwd};
  f.planes[kLeft] = {(-right - tw * fwd).normalized(), pose.eye};
  f.planes[kRight] = {(right - tw * fwd).normalized(), pose.eye};
  f.planes[kTop] = {(up - th * fwd).normalized(), pose.eye};
  f.planes[kBottom] = {(-up - th * fwd).normalized(), pose.eye};

  int c = 0;
  for (double d : {pose.near, pose.far}) {
    const Vec3 center = pose.eye + d * fwd;
    const Vec3 rx = d * tw * right;
    const Vec3 uy = d * th * up;
    f.corners[c++] = center - rx - uy;
    f.corners[c++] = center + rx - uy;
    f.corners[c++] = center + rx + uy;
    f.corners[c++] = center - rx + uy;
  }
  return f;
}

/// Boundary points count as inside.
[[nodiscard]] inline bool frustum_contains_point(const Frustum& f, const Vec3& p) {
  for (const Plane& pl : f.planes) {
    if (signed_distance(pl, p) > 0.0) return false;
  }
  return true;
}

}  // namespace abin
