#include <gtest/gtest.h>

#include "sphgeom/core.hpp"
#include "sphgeom/sampling.hpp"

namespace sphgeom {
namespace {

TEST(Geo, AxisConventionAndPole) {
  const SPoint p = from_geo(GeoCoord::make(0, 0));
  EXPECT_NEAR(p.x(), 1.0, 1e-15);
  EXPECT_NEAR(p.y(), 0.0, 1e-15);
  EXPECT_NEAR(p.z(), 0.0, 1e-15);
  const SPoint n = from_geo(GeoCoord::make(kHalfPi, 2.3));
  EXPECT_NEAR((n.vec() - Vec3::UnitZ()).norm(), 0.0, 1e-15);
  EXPECT_EQ(GeoCoord::make(kHalfPi, 2.3).lon, 0.0);
}

TEST(Geo, Roundtrip) {
  const GeoCoord g = to_geo(from_geo(GeoCoord::make(0.3, -1.1)));
  EXPECT_NEAR(g.lat, 0.3, 1e-12);
  EXPECT_NEAR(g.lon, -1.1, 1e-12);
}

TEST(Geo, RejectsLatitudeOutOfRange) {
  EXPECT_THROW(GeoCoord::make(2.0, 0.0), Error);
}

TEST(Dist, Basics) {
  Rng rng(1);
  const SPoint p = random_point(rng);
  EXPECT_EQ(dist(p, p), 0.0);
  EXPECT_NEAR(dist(p, antipode(p)), kPi, 1e-15);
  EXPECT_NEAR(dist(SPoint(1, 0, 0), SPoint(0, 1, 0)), kHalfPi, 1e-15);
}

TEST(Dist, TriangleInequalityAndSymmetry) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const SPoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
    EXPECT_LE(dist(p, r), dist(p, q) + dist(q, r) + 1e-15);
    EXPECT_EQ(dist(p, q), dist(q, p));
  }
}

TEST(Antipode, Involution) {
  const SPoint n(0, 0, 1);
  EXPECT_NEAR((antipode(n).vec() - Vec3(0, 0, -1)).norm(), 0.0, 1e-15);
  Rng rng(3);
  const SPoint p = random_point(rng);
  EXPECT_EQ(antipode(antipode(p)).vec(), p.vec());
}

TEST(GreatCircleThrough, PoleAndContainment) {
  const GreatCircle g = great_circle_through(SPoint(1, 0, 0), SPoint(0, 1, 0));
  EXPECT_NEAR((g.pole().vec() - Vec3::UnitZ()).norm(), 0.0, 1e-15);
  // Canonical sign: the reversed pair gives the same pole.
  const GreatCircle h = great_circle_through(SPoint(0, 1, 0), SPoint(1, 0, 0));
  EXPECT_TRUE(g.same_as(h, 1e-15));

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const SPoint p = random_point(rng), q = random_point(rng);
    const GreatCircle c = great_circle_through(p, q);
    const SPoint m = midpoint(p, q);
    for (const SPoint& x : {p, q, m, antipode(p), antipode(q), antipode(m)}) EXPECT_TRUE(c.contains(x, 1e-12));
  }
}

TEST(GreatCircleThrough, AntipodalIsDegenerate) {
  const SPoint p(0.2, 0.3, 0.9);
  try {
    great_circle_through(p, antipode(p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(Intersect, EquatorAndMeridian) {
  const GreatCircle equator(SPoint(0, 0, 1));
  const GreatCircle meridian = great_circle_through(SPoint(0, 0, 1), from_geo(GeoCoord::make(0, 0.7)));
  auto [p, q] = intersect(equator, meridian);
  const double lon = std::atan2(p.y(), p.x());
  EXPECT_NEAR(std::abs(std::remainder(lon - 0.7, kPi)), 0.0, 1e-14);
  EXPECT_EQ(p.vec(), -q.vec());
}

TEST(Intersect, RandomPairsOnBothCircles) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const GreatCircle g1(random_point(rng)), g2(random_point(rng));
    auto [p, q] = intersect(g1, g2);
    EXPECT_TRUE(g1.contains(p, 1e-12) && g2.contains(p, 1e-12));
    EXPECT_TRUE(g1.contains(q, 1e-12) && g2.contains(q, 1e-12));
    EXPECT_EQ(p.vec(), -q.vec());
  }
}

TEST(Intersect, CoincidentCircles) {
  const GreatCircle g(SPoint(0.1, 0.2, 0.3));
  EXPECT_THROW(intersect(g, GreatCircle(-g.pole())), Error);
}

TEST(Midpoint, Basics) {
  const SPoint m = midpoint(SPoint(1, 0, 0), SPoint(0, 1, 0));
  EXPECT_NEAR((m.vec() - Vec3(1, 1, 0).normalized()).norm(), 0.0, 1e-15);
  Rng rng(6);
  const SPoint p = random_point(rng), q = random_point(rng);
  const SPoint mm = midpoint(p, q);
  EXPECT_NEAR(dist(mm, p), dist(mm, q), 1e-14);
  EXPECT_NEAR(dist(midpoint(p, p), p), 0.0, 1e-15);
  EXPECT_THROW(midpoint(p, antipode(p)), Error);
}

TEST(PerpendicularAt, MeridianThroughLonZero) {
  const GreatCircle equator(SPoint(0, 0, 1));
  const SPoint p(1, 0, 0);
  const GreatCircle perp = perpendicular_at(equator, p);
  EXPECT_TRUE(perp.contains(p));
  EXPECT_TRUE(perp.contains(SPoint(0, 0, 1)));
  EXPECT_NEAR(interior_angle(p, SPoint(0, 1, 0), SPoint(0, 0, 1)), kHalfPi, 1e-15);
  try {
    perpendicular_at(equator, SPoint(0, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointNotOnCircle);
  }
}

TEST(EquidistantCircles, LatitudeCirclesAndSampling) {
  const GreatCircle equator(SPoint(0, 0, 1));
  auto [north, south] = equidistant_circles(equator, kPi / 4);
  EXPECT_NEAR(north.radius, kPi / 4, 1e-15);
  EXPECT_NEAR(north.pole.z(), 1.0, 1e-15);
  EXPECT_NEAR(south.pole.z(), -1.0, 1e-15);

  auto [limit, _] = equidistant_circles(equator, 1e-9);
  EXPECT_NEAR(limit.radius, kHalfPi, 1e-8);

  Rng rng(7);
  const GreatCircle g(random_point(rng));
  const double d = 0.37;
  auto [c1, c2] = equidistant_circles(g, d);
  for (const auto& c : {c1, c2}) {
    for (int i = 0; i < 100; ++i) EXPECT_NEAR(g.distance_from(c.point_at(kTwoPi * i / 100)), d, 1e-12);
  }
  EXPECT_THROW(equidistant_circles(g, 2.0), Error);
}

TEST(InteriorAngle, Cases) {
  const SPoint x(1, 0, 0), y(0, 1, 0), z(0, 0, 1);
  EXPECT_NEAR(interior_angle(x, y, z), kHalfPi, 1e-15);
  EXPECT_NEAR(interior_angle(x, y, y), 0.0, 1e-15);
  EXPECT_NEAR(interior_angle(x, y, SPoint(0, -1, 0)), kPi, 1e-15);
  EXPECT_THROW(interior_angle(x, antipode(x), y), Error);
}

TEST(SmallCircle, CanonicalFormIsSamePointSet) {
  const SmallCircle c{SPoint(0.3, -0.2, 0.9), 2.2};
  const SmallCircle k = c.canonical();
  EXPECT_LE(k.radius, kHalfPi);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(k.contains(c.point_at(0.3 * i), 1e-12));
  EXPECT_TRUE(c.same_as(k));
}

TEST(Arc, RejectsAntipodalEndpoints) {
  const SPoint p(0, 0, 1);
  EXPECT_THROW(Arc::make(p, antipode(p)), Error);
  const Arc a = Arc::make(SPoint(1, 0, 0), SPoint(0, 1, 0));
  EXPECT_NEAR(a.length(), kHalfPi, 1e-15);
  EXPECT_NEAR((a.point_at(0.5).vec() - Vec3(1, 1, 0).normalized()).norm(), 0.0, 1e-15);
}

}  // namespace
}  // namespace sphgeom
