#pragma once

// Seeded generators of random quadratics, boxes, and camera poses for the
// property suites.

#include "abin/frustum.hpp"
#include "abin/quadratic.hpp"

#include <random>

namespace abin::cases {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Vec3 uniform_vec(Rng& rng, double lo, double hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

inline Vec3 unit_vec(Rng& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = {g(rng), g(rng), g(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

/// Mixes definite, indefinite, rank-deficient and purely linear quadratics.
inline ScalarQuadratic quadratic(Rng& rng) {
  const double c0 = uniform(rng, -2, 2);
  const Vec3 b = uniform_vec(rng, -1, 1) * std::pow(10.0, uniform(rng, -1, 1));
  Mat3 a = Mat3::Zero();
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: break;  // linear
    case 1: {       // rank one
      const Vec3 u = uniform_vec(rng, -1, 1);
      a = uniform(rng, -2, 2) * u * u.transpose();
      break;
    }
    case 2: {  // semidefinite with a zero diagonal entry, as in the sphere case
      a = uniform_vec(rng, -1, 1).asDiagonal();
      a(0, 0) = 0.0;
      a(0, 1) = a(1, 0) = uniform(rng, -0.3, 0.3);
      a(0, 2) = a(2, 0) = uniform(rng, -0.3, 0.3);
      break;
    }
    default:
      for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = uniform(rng, -1, 1);
      }
  }
  return {c0, b, a * std::pow(10.0, uniform(rng, -1, 1))};
}

/// Occasionally degenerate (zero-width) on one axis.
inline Box3 box(Rng& rng) {
  const Vec3 c = uniform_vec(rng, -1, 1);
  Vec3 h = uniform_vec(rng, 0.05, 1.5);
  if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) h[std::uniform_int_distribution<int>(0, 2)(rng)] = 0.0;
  return Box3::centered(c, h);
}

inline CameraPose pose(Rng& rng) {
  CameraPose p;
  p.eye = uniform_vec(rng, -50, 50);
  p.look_dir = unit_vec(rng);
  do {
    p.up_hint = unit_vec(rng);
  } while (std::abs(p.look_dir.dot(p.up_hint)) > 0.95);
  p.fov_y = uniform(rng, 0.2, 2.5);
  p.aspect = uniform(rng, 0.5, 2.0);
  p.near = uniform(rng, 0.1, 5.0);
  p.far = p.near + uniform(rng, 5.0, 200.0);
  return p;
}

/// Box placed near the frustum of `p` so that all three outcomes occur.
inline Box3 box_near(Rng& rng, const CameraPose& p) {
  const double depth = uniform(rng, -0.2, 1.3) * p.far;
  const double spread = 0.8 * std::max(depth, 1.0) * std::tan(0.5 * p.fov_y) * std::max(1.0, p.aspect);
  const Vec3 c = p.eye + depth * p.look_dir + uniform_vec(rng, -spread, spread);
  const Vec3 h = uniform_vec(rng, 0.0, 0.2) * std::max(p.far, 1.0);
  return Box3::centered(c, h);
}

}  // namespace abin::cases
