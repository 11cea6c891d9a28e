#include "abin/frustum.hpp"
#include "abin/random_cases.hpp"

#include <gtest/gtest.h>

namespace abin {
namespace {

CameraPose canonical() {
  CameraPose p;
  p.eye = Vec3::Zero();
  p.look_dir = Vec3(0, 0, -1);
  p.up_hint = Vec3(0, 1, 0);
  p.fov_y = kPi / 2;
  p.aspect = 1.0;
  p.near = 1.0;
  p.far = 100.0;
  return p;
}

TEST(Frustum, SignedDistance) {
  EXPECT_EQ(signed_distance({Vec3(1, 0, 0), Vec3::Zero()}, Vec3(2, 5, -1)), 2.0);
  EXPECT_EQ(signed_distance({Vec3(1, 0, 0), Vec3::Zero()}, Vec3(0, 5, -1)), 0.0);
  EXPECT_EQ(signed_distance({Vec3(0, 1, 0), Vec3(0, 3, 0)}, Vec3(0, 1, 0)), -2.0);
}

TEST(Frustum, CanonicalInteriorPoint) {
  const Frustum f = frustum_from_camera(canonical());
  for (const Plane& p : f.planes) {
    EXPECT_LT(signed_distance(p, Vec3(0, 0, -50)), 0.0);
    EXPECT_NEAR(p.n.norm(), 1.0, 1e-12);
  }
  EXPECT_TRUE(frustum_contains_point(f, Vec3(0, 0, -50)));
}

TEST(Frustum, InFrontOfNearPlane) {
  const Frustum f = frustum_from_camera(canonical());
  for (int k = 0; k < 6; ++k) {
    const double d = signed_distance(f.planes[static_cast<std::size_t>(k)], Vec3(0, 0, -0.5));
    if (k == kNear) {
      EXPECT_GT(d, 0.0);
    } else {
      EXPECT_LE(d, 0.0);
    }
  }
}

TEST(Frustum, RightPlane) {
  const Frustum f = frustum_from_camera(canonical());
  const Vec3 n = f.planes[kRight].n;
  EXPECT_NEAR((n - Vec3(std::cos(kPi / 4), 0, std::sin(kPi / 4))).norm(), 0.0, 1e-12);
  EXPECT_GT(signed_distance(f.planes[kRight], Vec3(200, 0, -50)), 0.0);
  EXPECT_FALSE(frustum_contains_point(f, Vec3(200, 0, -50)));
  // The right plane passes through the far-right corners of the frustum.
  EXPECT_NEAR(signed_distance(f.planes[kRight], Vec3(100, 0, -100)), 0.0, 1e-9);
  EXPECT_NEAR(signed_distance(f.planes[kRight], f.corners[5]), 0.0, 1e-9);
}

TEST(Frustum, Containment) {
  const Frustum f = frustum_from_camera(canonical());
  EXPECT_TRUE(frustum_contains_point(f, Vec3(0, 0, -50)));
  EXPECT_FALSE(frustum_contains_point(f, Vec3(0, 0, 1)));
  EXPECT_FALSE(frustum_contains_point(f, Vec3(0, 0, -101)));
  EXPECT_TRUE(frustum_contains_point(f, Vec3(0, 0, -100)));
}

TEST(Frustum, RejectsInvalidPoses) {
  CameraPose p = canonical();
  p.up_hint = p.look_dir;
  EXPECT_THROW((void)frustum_from_camera(p), InvalidArgument);
  p = canonical();
  p.fov_y = kPi;
  EXPECT_THROW((void)frustum_from_camera(p), InvalidArgument);
  p = canonical();
  p.far = p.near;
  EXPECT_THROW((void)frustum_from_camera(p), InvalidArgument);
  p = canonical();
  p.near = 0.0;
  EXPECT_THROW((void)frustum_from_camera(p), InvalidArgument);
  p = canonical();
  p.aspect = -1.0;
  EXPECT_THROW((void)frustum_from_camera(p), InvalidArgument);
  p = canonical();
  p.look_dir = Vec3(0, 0, -2);
  EXPECT_THROW((void)frustum_from_camera(p), InvalidArgument);
}

TEST(Frustum, CornersAndCentroid) {
  cases::Rng rng(21);
  for (int k = 0; k < 500; ++k) {
    const CameraPose pose = cases::pose(rng);
    const Frustum f = frustum_from_camera(pose);
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& c : f.corners) centroid += c / 8.0;
    for (const Plane& p : f.planes) EXPECT_LT(signed_distance(p, centroid), 0.0);
    EXPECT_GT(signed_distance(f.planes[kNear], pose.eye), 0.0);

    // Near corners lie on near + two side planes, far corners on far + two.
    for (int c = 0; c < 8; ++c) {
      const Vec3& corner = f.corners[static_cast<std::size_t>(c)];
      const int depth_plane = c < 4 ? kNear : kFar;
      const int horiz = (c % 4 == 0 || c % 4 == 3) ? kLeft : kRight;
      const int vert = (c % 4 < 2) ? kBottom : kTop;
      for (int j : {depth_plane, horiz, vert}) {
        EXPECT_LE(std::abs(signed_distance(f.planes[static_cast<std::size_t>(j)], corner)), 1e-6 * pose.far);
      }
      for (const Plane& p : f.planes) EXPECT_LE(signed_distance(p, corner), 1e-6 * pose.far);
    }
  }
}

TEST(Frustum, DistancesScaleHomogeneously) {
  cases::Rng rng(22);
  for (int k = 0; k < 200; ++k) {
    const CameraPose pose = cases::pose(rng);
    const double s = cases::uniform(rng, 0.1, 10.0);
    CameraPose scaled = pose;
    scaled.eye *= s;
    scaled.near *= s;
    scaled.far *= s;
    const Frustum f = frustum_from_camera(pose), g = frustum_from_camera(scaled);
    const Vec3 p = cases::uniform_vec(rng, -100, 100);
    for (std::size_t j = 0; j < 6; ++j) {
      const double a = signed_distance(f.planes[j], p), b = signed_distance(g.planes[j], s * p);
      EXPECT_NEAR(b, s * a, 1e-9 * s * (std::abs(a) + p.norm() + pose.eye.norm() + pose.far));
    }
  }
}

}  // namespace
}  // namespace abin
