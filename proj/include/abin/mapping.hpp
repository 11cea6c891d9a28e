#pragma once

// Twice-differentiable 3 -> 3 mappings evaluated as jets (value, Jacobian,
// per-component Hessians) at an expansion point.

#include "abin/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace abin {

struct MapJet {
  Vec3 x0 = Vec3::Zero();
  Vec3 value = Vec3::Zero();
  /// Row i holds the gradient of component f_i.
  Mat3 jacobian = Mat3::Zero();
  std::array<Mat3, 3> hessians{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
};

/// Spherical earth; parameters are ordered (r, lat, lon) with r = radius + height.
struct GeodeticParams {
  double radius = 6'371'000.0;

  void validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("GeodeticParams: radius must be positive");
  }
};

[[nodiscard]] inline MapJet identity_jet(const Vec3& x0) {
  MapJet jet;
  jet.x0 = x0;
  jet.value = x0;
  jet.jacobian = Mat3::Identity();
  return jet;
}

/// (r, lat, lon) -> (r cos lat sin lon, r sin lat, r cos lat cos lon).
[[nodiscard]] inline Vec3 sphere_value(const Vec3& X) {
  const double r = X[0], cp = std::cos(X[1]), sp = std::sin(X[1]), ct = std::cos(X[2]), st = std::sin(X[2]);
  return {r * cp * st, r * sp, r * cp * ct};
}

[[nodiscard]] inline MapJet sphere_jet(const GeodeticParams& params, const Vec3& X0) {
  params.validate();
  const double r = X0[0];
  if (!(r > 0.0)) throw InvalidArgument("sphere_jet: radial coordinate must be positive");
  const double cp = std::cos(X0[1]), sp = std::sin(X0[1]), ct = std::cos(X0[2]), st = std::sin(X0[2]);

  MapJet jet;
  jet.x0 = X0;
  jet.value = {r * cp * st, r * sp, r * cp * ct};
  jet.jacobian << cp * st, -r * sp * st, r * cp * ct,  //
      sp, r * cp, 0.0,                                 //
      cp * ct, -r * sp * ct, -r * cp * st;

  // No (r, r) entries: every component is linear in r.
  jet.hessians[0] << 0.0, -sp * st, cp * ct,  //
      -sp * st, -r * cp * st, -r * sp * ct,   //
      cp * ct, -r * sp * ct, -r * cp * st;
  jet.hessians[1] << 0.0, cp, 0.0,  //
      cp, -r * sp, 0.0,             //
      0.0, 0.0, 0.0;
  jet.hessians[2] << 0.0, -sp * ct, -cp * st,  //
      -sp * ct, -r * cp * ct, r * sp * st,     //
      -cp * st, r * sp * st, -r * cp * ct;
  return jet;
}

enum class MapKind { Identity, Sphere };

/// A mapping identifier plus its parameters.
struct Mapping {
  MapKind kind = MapKind::Identity;
  GeodeticParams geo{};

  static Mapping identity() { return {MapKind::Identity, {}}; }
  static Mapping sphere(const GeodeticParams& p) { return {MapKind::Sphere, p}; }

  [[nodiscard]] Vec3 value(const Vec3& x) const { return kind == MapKind::Identity ? x : sphere_value(x); }
  [[nodiscard]] MapJet jet(const Vec3& x0) const {
    return kind == MapKind::Identity ? identity_jet(x0) : sphere_jet(geo, x0);
  }
};

/// Maximum relative deviation between an analytic jet and central finite
/// differences of `value_fn` around jet.x0.
///
/// Axis k is stepped by h * u_k with u_k = max(1, |x0_k|). Each derivative
/// entry is compared relative to |analytic| + |f(x0)| / (u_k u_l), which is
/// the natural magnitude of that entry for a mapping of size |f(x0)|.
template <class ValueFn>
[[nodiscard]] double jet_fd_check(const ValueFn& value_fn, const MapJet& jet, double h) {
  if (!(h > 0.0)) throw InvalidArgument("jet_fd_check: step must be positive");
  const Vec3 x0 = jet.x0;
  const Vec3 f0 = value_fn(x0);
  const double fscale = f0.norm();
  Vec3 u, step;
  for (int k = 0; k < 3; ++k) {
    u[k] = std::max(1.0, std::abs(x0[k]));
    step[k] = h * u[k];
  }
  auto shifted = [&](int a, double sa, int b, double sb) {
    Vec3 x = x0;
    if (a >= 0) x[a] += sa * step[a];
    if (b >= 0) x[b] += sb * step[b];
    return value_fn(x);
  };
  auto rel = [](double analytic, double fd, double scale) {
    return std::abs(analytic - fd) / (std::abs(analytic) + scale + 1e-30);
  };

  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec3 d = (shifted(k, 1, -1, 0) - shifted(k, -1, -1, 0)) / (2.0 * step[k]);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, rel(jet.jacobian(i, k), d[i], fscale / u[k]));
  }
  for (int k = 0; k < 3; ++k) {
    for (int l = k; l < 3; ++l) {
      Vec3 d2;
      if (k == l) {
        d2 = (shifted(k, 1, -1, 0) - 2.0 * f0 + shifted(k, -1, -1, 0)) / (step[k] * step[k]);
      } else {
        d2 = (shifted(k, 1, l, 1) - shifted(k, 1, l, -1) - shifted(k, -1, l, 1) + shifted(k, -1, l, -1)) /
             (4.0 * step[k] * step[l]);
      }
      for (int i = 0; i < 3; ++i) {
        const double s = fscale / (u[k] * u[l]);
        worst = std::max(worst, rel(jet.hessians[i](k, l), d2[i], s));
        worst = std::max(worst, rel(jet.hessians[i](l, k), d2[i], s));
      }
    }
  }
  return worst;
}

[[nodiscard]] inline double jet_fd_check(const Mapping& map, const Vec3& x0, double h) {
  return jet_fd_check([&](const Vec3& x) { return map.value(x); }, map.jet(x0), h);
}

}  // namespace abin
