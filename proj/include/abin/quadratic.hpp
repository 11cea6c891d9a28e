#pragma once

// Scalar quadratics in three variables and their extrema over axis-aligned
// boxes. Three extrema routes are provided: the nine-point rule (stationary
// point plus corners), exact KKT face enumeration, and a dense lattice.

#include "abin/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace abin {

/// value(x) = c0 + b.x + 0.5 x^T H x, with H kept symmetric.
class ScalarQuadratic {
 public:
  ScalarQuadratic() : b_(Vec3::Zero()), h_(Mat3::Zero()) {}
  ScalarQuadratic(double c0, const Vec3& b, const Mat3& h)
      : c0_(c0), b_(b), h_(0.5 * (h + h.transpose())) {}

  [[nodiscard]] double c0() const { return c0_; }
  [[nodiscard]] const Vec3& b() const { return b_; }
  [[nodiscard]] const Mat3& H() const { return h_; }

 private:
  double c0_ = 0.0;
  Vec3 b_;
  Mat3 h_;
};

/// Axis-aligned box; zero-width axes are allowed.
struct Box3 {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  Box3() = default;
  Box3(const Vec3& lo_, const Vec3& hi_) : lo(lo_), hi(hi_) {
    for (int k = 0; k < 3; ++k) {
      if (!(lo[k] <= hi[k])) throw InvalidArgument("Box3: lo must not exceed hi on any axis");
    }
  }

  static Box3 centered(const Vec3& center, const Vec3& half) { return {center - half, center + half}; }
  static Box3 cube(double lo, double hi) { return {Vec3::Constant(lo), Vec3::Constant(hi)}; }

  [[nodiscard]] Vec3 center() const { return 0.5 * (lo + hi); }
  [[nodiscard]] Vec3 half_widths() const { return 0.5 * (hi - lo); }
  [[nodiscard]] double diagonal() const { return (hi - lo).norm(); }

  /// Corner c, where bit k of c selects hi on axis k.
  [[nodiscard]] Vec3 corner(int c) const {
    return {(c & 1) ? hi[0] : lo[0], (c & 2) ? hi[1] : lo[1], (c & 4) ? hi[2] : lo[2]};
  }

  [[nodiscard]] bool contains(const Vec3& x, double tol = 0.0) const {
    for (int k = 0; k < 3; ++k) {
      if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
    }
    return true;
  }

  [[nodiscard]] Vec3 clamp(const Vec3& x) const { return x.cwiseMax(lo).cwiseMin(hi); }
};

struct Extrema {
  double min_val = std::numeric_limits<double>::infinity();
  double max_val = -std::numeric_limits<double>::infinity();
  Vec3 argmin = Vec3::Zero();
  Vec3 argmax = Vec3::Zero();

  void consider(double v, const Vec3& x) {
    if (v < min_val) {
      min_val = v;
      argmin = x;
    }
    if (v > max_val) {
      max_val = v;
      argmax = x;
    }
  }
};

inline constexpr double kDefaultSingularTol = 1e-12;

[[nodiscard]] inline double eval(const ScalarQuadratic& q, const Vec3& x) {
  return q.c0() + q.b().dot(x) + 0.5 * x.dot(q.H() * x);
}

[[nodiscard]] inline Vec3 gradient_at(const ScalarQuadratic& q, const Vec3& x) { return q.b() + q.H() * x; }

/// Solution of H x = -b, or nullopt when |det H| <= tol * ||H||_F^3.
[[nodiscard]] inline std::optional<Vec3> stationary_point(const ScalarQuadratic& q,
                                                          double tol = kDefaultSingularTol) {
  if (!(tol > 0.0)) throw InvalidArgument("stationary_point: tol must be positive");
  const double scale = q.H().norm();
  if (scale == 0.0) return std::nullopt;
  const double det = q.H().determinant();
  if (!(std::abs(det) > tol * scale * scale * scale)) return std::nullopt;
  Vec3 x = q.H().partialPivLu().solve(-q.b());
  if (!x.allFinite()) return std::nullopt;
  return x;
}

namespace detail {

// Feasibility slack for candidate points that land a rounding error outside
// the box; such points are clamped back in before evaluation.
inline double box_slack(const Box3& box) { return 1e-12 * std::max(box.diagonal(), 1e-300); }

inline void consider_corners(const ScalarQuadratic& q, const Box3& box, Extrema& ex) {
  for (int c = 0; c < 8; ++c) {
    const Vec3 x = box.corner(c);
    ex.consider(eval(q, x), x);
  }
}

}  // namespace detail

/// Nine-point rule: the 8 corners plus the interior stationary point when
/// one exists. Misses extrema that sit on edges or facets.
[[nodiscard]] inline Extrema box_extrema_paper9(const ScalarQuadratic& q, const Box3& box,
                                                double tol = kDefaultSingularTol) {
  Extrema ex;
  detail::consider_corners(q, box, ex);
  if (auto xs = stationary_point(q, tol); xs && box.contains(*xs, detail::box_slack(box))) {
    const Vec3 x = box.clamp(*xs);
    ex.consider(eval(q, x), x);
  }
  return ex;
}

/// Exact extrema by enumerating the 27 faces of the box (interior, facets,
/// edges, corners) and keeping every feasible face-restricted stationary
/// point.
[[nodiscard]] inline Extrema box_extrema_exact(const ScalarQuadratic& q, const Box3& box,
                                               double tol = kDefaultSingularTol) {
  Extrema ex;
  const Mat3& H = q.H();
  const double hscale = H.norm();
  const double slack = detail::box_slack(box);

  // Axis state: 0 free, 1 at lo, 2 at hi.
  for (int code = 0; code < 27; ++code) {
    std::array<int, 3> state{code % 3, (code / 3) % 3, code / 9};
    Vec3 x;
    std::array<int, 3> free{};
    int nfree = 0;
    for (int k = 0; k < 3; ++k) {
      if (state[k] == 0) {
        free[nfree++] = k;
        x[k] = 0.0;
      } else {
        x[k] = state[k] == 1 ? box.lo[k] : box.hi[k];
      }
    }
    if (nfree > 0) {
      if (hscale == 0.0) continue;  // linear: extrema live at corners
      // Reduced system over free axes: H_FF y = -(b_F + H_FX x_X).
      Eigen::Matrix<double, 3, 3> m = Eigen::Matrix<double, 3, 3>::Zero();
      Vec3 rhs = Vec3::Zero();
      for (int a = 0; a < nfree; ++a) {
        const int i = free[a];
        double r = -q.b()[i];
        for (int k = 0; k < 3; ++k) {
          if (state[k] != 0) r -= H(i, k) * x[k];
        }
        rhs[a] = r;
        for (int c = 0; c < nfree; ++c) m(a, c) = H(i, free[c]);
      }
      Vec3 y;
      if (nfree == 1) {
        if (!(std::abs(m(0, 0)) > tol * hscale)) continue;
        y[0] = rhs[0] / m(0, 0);
      } else if (nfree == 2) {
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (!(std::abs(det) > tol * hscale * hscale)) continue;
        y[0] = (rhs[0] * m(1, 1) - m(0, 1) * rhs[1]) / det;
        y[1] = (m(0, 0) * rhs[1] - m(1, 0) * rhs[0]) / det;
      } else {
        auto xs = stationary_point(q, tol);
        if (!xs) continue;
        y = *xs;
      }
      bool feasible = true;
      for (int a = 0; a < nfree; ++a) {
        const int k = free[a];
        if (!std::isfinite(y[a]) || y[a] < box.lo[k] - slack || y[a] > box.hi[k] + slack) {
          feasible = false;
          break;
        }
        x[k] = std::clamp(y[a], box.lo[k], box.hi[k]);
      }
      if (!feasible) continue;
    }
    ex.consider(eval(q, x), x);
  }
  return ex;
}

/// Extrema over the n x n x n uniform lattice spanning the box (corners
/// included exactly).
[[nodiscard]] inline Extrema box_extrema_grid(const ScalarQuadratic& q, const Box3& box, int n) {
  if (n < 2) throw InvalidArgument("box_extrema_grid: n must be at least 2");
  std::array<std::vector<double>, 3> axis;
  for (int k = 0; k < 3; ++k) {
    axis[k].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      axis[k][static_cast<std::size_t>(i)] =
          i == n - 1 ? box.hi[k] : box.lo[k] + (box.hi[k] - box.lo[k]) * (static_cast<double>(i) / (n - 1));
    }
  }
  Extrema ex;
  Vec3 x;
  for (double x0 : axis[0]) {
    x[0] = x0;
    for (double x1 : axis[1]) {
      x[1] = x1;
      for (double x2 : axis[2]) {
        x[2] = x2;
        ex.consider(eval(q, x), x);
      }
    }
  }
  return ex;
}

}  // namespace abin
