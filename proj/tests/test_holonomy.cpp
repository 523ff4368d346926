#include "oracles.hpp"
#include "pathtrans/catalog.hpp"
#include "pathtrans/holonomy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pathtrans;

namespace {

constexpr double kPi = std::numbers::pi;

Vec v2(double a, double b) { return Eigen::Vector2d(a, b); }

Mat rot(double a) {
  Mat m(2, 2);
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

const GeometryCatalogEntry& sphere() {
  static const GeometryCatalogEntry e = sphere_levi_civita();
  return e;
}

// A closed loop through (1, 0.2): out along a great circle, back along another.
Path triangle_loop(double spread) {
  const Vec a = v2(1.0, 0.2), b = v2(1.3, 0.2 + spread), c = v2(0.8, 0.2 + 0.5 * spread);
  return product_canonical(product_canonical(paths::segment(a, b), paths::segment(b, c)), paths::segment(c, a));
}

}  // namespace

TEST(RotationAngle, Basics) {
  EXPECT_EQ(rotation_angle(Mat::Identity(2, 2)), 0.0);
  Mat q(2, 2);
  q << 0, -1, 1, 0;
  EXPECT_DOUBLE_EQ(rotation_angle(q), kPi / 2);
  EXPECT_NEAR(rotation_angle(rot(-2.0)), -2.0, 1e-15);
  Mat reflect(2, 2);
  reflect << 1, 0, 0, -1;
  try {
    rotation_angle(reflect);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotARotation);
  }
  Mat shear(2, 2);
  shear << 1, 1, 0, 1;
  EXPECT_THROW(rotation_angle(shear), Error);
}

TEST(HolonomyAngle, InvariantUnderFrameChange) {
  Mat d = Mat::Identity(2, 2);
  d(1, 1) = 0.6;
  for (double a : {0.3, -1.2, 2.9}) {
    const auto ang = holonomy_angle(d.inverse() * rot(a) * d);
    ASSERT_TRUE(ang.has_value());
    EXPECT_NEAR(*ang, a, 1e-14);
    EXPECT_NEAR(*holonomy_angle(rot(a)), rotation_angle(rot(a)), 1e-15);
  }
  Mat hyper(2, 2);
  hyper << 2, 0, 0, 0.5;
  EXPECT_FALSE(holonomy_angle(hyper).has_value());
  EXPECT_NEAR(angle_distance(kPi - 0.1, -kPi + 0.1), 0.2, 1e-15);
}

TEST(Holonomy, FlatLoopsAreTrivial) {
  const auto e = flat_bundle(2, 2);
  const HolonomyReport r = holonomy(e.transport, triangle_loop(0.4));
  EXPECT_EQ(r.distance_to_identity, 0.0);
  ASSERT_TRUE(r.angle.has_value());
  EXPECT_EQ(*r.angle, 0.0);
}

TEST(Holonomy, NotALoop) {
  try {
    holonomy(sphere().transport, paths::segment(v2(1, 0), v2(1.2, 0.1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotALoop);
  }
}

TEST(Holonomy, LatitudeAtSixtyDegrees) {
  const HolonomyReport r = holonomy(sphere().transport, paths::latitude_turns(kPi / 3, 1.0));
  ASSERT_TRUE(r.angle.has_value());
  EXPECT_NEAR(*r.angle, kPi, 1e-6);
  EXPECT_NEAR(r.distance_to_identity, 2.0, 1e-6);
}

TEST(Holonomy, LatitudeSweepMatchesOracle) {
  for (double theta : {0.3, 0.7, 1.0, 1.3, 1.5, 2.0, 2.6}) {
    const HolonomyReport r = holonomy(sphere().transport, paths::latitude_turns(theta, 1.0));
    const double fine = oracle::elliptic_angle(oracle::sphere_latitude_transport(theta, 2 * kPi, 1.0, 1e-5));
    const double excess = oracle::wrap(2 * kPi * (1 - std::cos(theta)));
    ASSERT_TRUE(r.angle.has_value()) << theta;
    EXPECT_LE(angle_distance(*r.angle, fine), 1e-6) << theta;
    EXPECT_LE(angle_distance(*r.angle, excess), 1e-6) << theta;
  }
}

TEST(Holonomy, InverseLoopInvertsHolonomy) {
  const Path loop = triangle_loop(0.5);
  const Mat h = holonomy(sphere().transport, loop).matrix;
  const Mat hi = holonomy(sphere().transport, invert_canonical(loop)).matrix;
  EXPECT_LE(max_norm(Mat(hi * h - Mat::Identity(2, 2))), 1e-8);
}

TEST(Holonomy, ConcatenatedLoopsMultiplyInPathOrder) {
  const Path g1 = triangle_loop(0.5);
  const Vec base = v2(1.0, 0.2), p = v2(1.5, 0.0), q = v2(1.4, -0.6);
  const Path g2 =
      product_canonical(product_canonical(paths::segment(base, p), paths::segment(p, q)), paths::segment(q, base));
  const Mat h1 = holonomy(sphere().transport, g1).matrix;
  const Mat h2 = holonomy(sphere().transport, g2).matrix;
  const Mat h12 = holonomy(sphere().transport, product_canonical(g1, g2)).matrix;
  EXPECT_LE(max_norm(Mat(h12 - h2 * h1)), 1e-7);
}

TEST(Holonomy, NonAbelianProductOrder) {
  // so(3)-valued coefficients on the plane; holonomies of different loops do not commute.
  const auto g = std::make_shared<const BundleGeometry>(BundleSpace{"so3", 2, 3, {}, {}}, [](const Vec& x) {
    ConnectionCoefficients c(3, 2);
    c(1, 2, 0) = -(1.0 + x(1));
    c(2, 1, 0) = 1.0 + x(1);
    c(0, 2, 1) = x(0);
    c(2, 0, 1) = -x(0);
    return c;
  });
  const TransportAlongPaths t = transport_from_connection(g);
  const auto box = [](const Vec& a, const Vec& b, const Vec& c) {
    return product_canonical(product_canonical(paths::segment(a, b), paths::segment(b, c)), paths::segment(c, a));
  };
  const Path g1 = box(v2(0, 0), v2(0.8, 0), v2(0.8, 0.6));
  const Path g2 = box(v2(0, 0), v2(-0.5, 0.7), v2(-0.9, -0.2));
  const Mat h1 = holonomy(t, g1).matrix, h2 = holonomy(t, g2).matrix;
  const Mat h12 = holonomy(t, product_canonical(g1, g2)).matrix;
  EXPECT_GT(max_norm(Mat(h2 * h1 - h1 * h2)), 1e-3);
  EXPECT_LE(max_norm(Mat(h12 - h2 * h1)), 1e-7);
  EXPECT_FALSE(holonomy(t, g1).angle.has_value());
}

TEST(Holonomy, PreservesTheMetricAtTheBasePoint) {
  for (double theta : {0.5, 1.0, 1.3}) {
    const Mat h = holonomy(sphere().transport, paths::latitude_turns(theta, 1.0)).matrix;
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = std::sin(theta) * std::sin(theta);
    EXPECT_LE(max_norm(Mat(h.transpose() * g * h - g)), 1e-7) << theta;
  }
}

TEST(Holonomy, GenericTransportLinearization) {
  const auto e = nonlinear_fixture(2, 2);
  const Path loop = product_canonical(paths::segment(v2(0, 0), v2(0.5, 0)),
                                      product_canonical(paths::segment(v2(0.5, 0), v2(0.5, 0.5)),
                                                        paths::segment(v2(0.5, 0.5), v2(0, 0))));
  // At u = 0 the flow is stationary to first order.
  EXPECT_LE(holonomy(e.transport, loop).distance_to_identity, 1e-9);
  // At u = (1, 1) the derivative is 1 / (1 - alpha W)^2 with W the loop integral of omega.
  HolonomyOptions o;
  o.base_fibre_point = v2(1.0, 1.0);
  const HolonomyReport r = holonomy(e.transport, loop, o);
  const double w = 0.125;  // enclosed area of the triangle
  const double expected = 1.0 / ((1 - kNonlinearAlpha * w) * (1 - kNonlinearAlpha * w));
  EXPECT_NEAR(r.matrix(0, 0), expected, 1e-7);
  EXPECT_NEAR(r.matrix(1, 1), expected, 1e-7);
  EXPECT_NEAR(r.matrix(0, 1), 0.0, 1e-7);
}
