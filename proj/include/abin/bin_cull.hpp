#pragma once

// Frustum classification of analytic bins: a parameter-space box mapped
// through a twice-differentiable function. Per plane, the displacement of the
// image from the bin-center image is approximated to second order and its
// extrema over the (inflated) bin are compared with the center's signed
// distance.

#include "abin/frustum.hpp"
#include "abin/mapping.hpp"
#include "abin/quadratic.hpp"

#include <array>
#include <string_view>

namespace abin {

enum class Classification { Outside, Inside, Intersect };
enum class PlaneState { FullyOutside, FullyInside, Straddles };
enum class ExtremaMode { Paper9, Exact };

[[nodiscard]] inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Outside: return "OUTSIDE";
    case Classification::Inside: return "INSIDE";
    case Classification::Intersect: return "INTERSECT";
  }
  return "?";
}

[[nodiscard]] inline std::string_view to_string(PlaneState s) {
  switch (s) {
    case PlaneState::FullyOutside: return "FULLY_OUTSIDE";
    case PlaneState::FullyInside: return "FULLY_INSIDE";
    case PlaneState::Straddles: return "STRADDLES";
  }
  return "?";
}

struct CullConfig {
  double inflation = 1.1;
  ExtremaMode extrema_mode = ExtremaMode::Exact;

  void validate() const {
    if (!(inflation >= 1.0 && inflation <= 2.0)) throw InvalidArgument("CullConfig: inflation must lie in [1, 2]");
  }
};

/// Same center, every half-width scaled by `factor`.
[[nodiscard]] inline Box3 inflate_bin(const Box3& bin, double factor) {
  if (!(factor >= 1.0)) throw InvalidArgument("inflate_bin: factor must be at least 1");
  if (factor == 1.0) return bin;
  return Box3::centered(bin.center(), factor * bin.half_widths());
}

/// sca(x) = n . g(x) with g(x) = -(J x) - 0.5 [x^T H_i x]_i, plus the signed
/// distance d of the expansion point's image. The image point f(x0 + x) then
/// has signed distance approximately d - sca(x).
struct PlaneQuadratic {
  ScalarQuadratic q;
  double d = 0.0;
};

[[nodiscard]] inline PlaneQuadratic plane_quadratic(const MapJet& jet, const Plane& plane) {
  const Vec3& n = plane.n;
  const Vec3 b = -(jet.jacobian.transpose() * n);
  const Mat3 H = -(n[0] * jet.hessians[0] + n[1] * jet.hessians[1] + n[2] * jet.hessians[2]);
  return {ScalarQuadratic(0.0, b, H), signed_distance(plane, jet.value)};
}

[[nodiscard]] inline Extrema box_extrema(const ScalarQuadratic& q, const Box3& box, ExtremaMode mode) {
  return mode == ExtremaMode::Exact ? box_extrema_exact(q, box) : box_extrema_paper9(q, box);
}

/// `bin` must already be inflated.
[[nodiscard]] inline PlaneState classify_against_plane(const ScalarQuadratic& q, double d, const Box3& bin,
                                                       ExtremaMode mode) {
  const Extrema ex = box_extrema(q, bin, mode);
  if (ex.max_val < d) return PlaneState::FullyOutside;
  if (d < ex.min_val) return PlaneState::FullyInside;
  return PlaneState::Straddles;
}

/// Per-plane states without early exit, in PlaneIndex order.
[[nodiscard]] inline std::array<PlaneState, 6> plane_states(const MapJet& jet, const Box3& bin_offsets,
                                                            const Frustum& frustum, double inflation,
                                                            ExtremaMode mode) {
  const Box3 bin = inflate_bin(bin_offsets, inflation);
  std::array<PlaneState, 6> out{};
  for (int j = 0; j < 6; ++j) {
    const PlaneQuadratic pq = plane_quadratic(jet, frustum.planes[static_cast<std::size_t>(j)]);
    out[static_cast<std::size_t>(j)] = classify_against_plane(pq.q, pq.d, bin, mode);
  }
  return out;
}

/// `bin_offsets` are offsets about jet.x0, i.e. a box centered at the origin
/// for the usual bin-center expansion.
[[nodiscard]] inline Classification classify_bin(const MapJet& jet, const Box3& bin_offsets, const Frustum& frustum,
                                                 const CullConfig& cfg) {
  cfg.validate();
  const Box3 bin = inflate_bin(bin_offsets, cfg.inflation);
  bool all_inside = true;
  for (const Plane& plane : frustum.planes) {
    const PlaneQuadratic pq = plane_quadratic(jet, plane);
    const PlaneState s = classify_against_plane(pq.q, pq.d, bin, cfg.extrema_mode);
    if (s == PlaneState::FullyOutside) return Classification::Outside;
    if (s != PlaneState::FullyInside) all_inside = false;
  }
  return all_inside ? Classification::Inside : Classification::Intersect;
}

}  // namespace abin
