#include <gtest/gtest.h>

#include <vector>

#include "sphgeom/lexell.hpp"
#include "sphgeom/sampling.hpp"

namespace sphgeom {
namespace {

struct Instance {
  SPoint A, B;
  double area;
};

Instance random_instance(Rng& rng) {
  for (;;) {
    const SPoint A = random_point(rng), B = random_point(rng);
    const double d = dist(A, B);
    if (d < 0.1 || d > kPi - 0.1) continue;
    return {A, B, uniform(rng, 0.05, kTwoPi - 0.05)};
  }
}

// Signed area of A, B, V in the orientation of the base (positive on the apex side).
double signed_area(const SPoint& A, const SPoint& B, const SPoint& V) {
  const double a = area(SphTriangle::from_vertices(A, B, V));
  return orientation(A, B, V) > 0 ? a : -a;
}

TEST(Lexell, RightAngleExample) {
  const SPoint A(1, 0, 0), B(0, 1, 0);
  const auto k = lexell_circle_euler(A, B, kHalfPi);
  EXPECT_NEAR(lexell_radius_printed(kHalfPi, kHalfPi), kPi / 4, 1e-15);
  // The circle through -A, -B and the apexes of area pi/2 has tan x = sqrt 2.
  EXPECT_NEAR(k.radius, std::atan(std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(lexell_radius(kHalfPi, kHalfPi), k.radius, 1e-12);
}

TEST(Lexell, BruteForceCircleThroughApexes) {
  // Oracle: along the perpendicular bisector of the base, bisect for the
  // apex V of area Delta; the circle through -A, -B, V is then unique.
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Instance in = random_instance(rng);
    if (in.area > kPi - 0.05) continue;
    const SPoint C = midpoint(in.A, in.B);
    const Vec3 up = SPoint(in.A.vec().cross(in.B.vec())).vec();
    double lo = 1e-9, hi = kPi - 1e-9;
    auto apex = [&](double h) { return travel(C, up, h); };
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (lo + hi);
      (signed_area(in.A, in.B, apex(m)) < in.area ? lo : hi) = m;
    }
    const SPoint V = apex(0.5 * (lo + hi));
    const Vec3 n = ((-in.B).vec() - (-in.A).vec()).cross(V.vec() - (-in.A).vec());
    SPoint pole(n);
    const auto k = lexell_circle_euler(in.A, in.B, in.area);
    if (pole.dot(k.pole) < 0) pole = -pole;
    EXPECT_NEAR(dist(pole, k.pole), 0.0, 1e-9);
    EXPECT_NEAR(dist(pole, -in.A), k.radius, 1e-9);
    EXPECT_NEAR(std::tan(k.radius), std::tan(dist(in.A, in.B) / 2) / std::sin(in.area / 2), 1e-7 * (1 + std::abs(std::tan(k.radius))));
  }
}

TEST(Lexell, ConstructionsCoincide) {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const Instance in = random_instance(rng);
    const auto e = lexell_circle_euler(in.A, in.B, in.area);
    const auto l = lexell_circle_lexell(in.A, in.B, in.area);
    EXPECT_LT(dist(e.pole, l.pole), 1e-10);
    EXPECT_LT(std::abs(e.radius - l.radius), 1e-10);
    EXPECT_NEAR(e.base_angle, 0.5 * (kPi - in.area), 1e-15);
  }
}

TEST(Lexell, AntipodesOnCircleAndApexesReproduceArea) {
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const Instance in = random_instance(rng);
    const auto k = lexell_circle_lexell(in.A, in.B, in.area);
    EXPECT_LT(k.circle().distance_from(-in.A), 1e-10);
    EXPECT_LT(k.circle().distance_from(-in.B), 1e-10);
    EXPECT_NEAR(lexell_mo(k), dist(in.A, in.B) / 2, 1e-12);
    for (const SPoint& V : k.sample_apexes(50)) {
      EXPECT_TRUE(k.on_locus_arc(V));
      EXPECT_NEAR(area(SphTriangle::from_vertices(in.A, in.B, V)), in.area, 1e-8);
    }
  }
}

TEST(Lexell, LocusIsSharp) {
  Rng rng(34);
  for (int i = 0; i < 50; ++i) {
    const Instance in = random_instance(rng);
    const auto k = lexell_circle_euler(in.A, in.B, in.area);
    for (const SPoint& V : k.sample_apexes(5)) {
      const Vec3 out = tangent_toward(V, -k.pole);
      for (double s : {-1e-3, 1e-3}) {
        const SPoint W = travel(V, out, s);
        if (orientation(in.A, in.B, W) <= 0) continue;
        EXPECT_GT(std::abs(area(SphTriangle::from_vertices(in.A, in.B, W)) - in.area), 1e-4);
      }
    }
  }
}

TEST(Lexell, LongBaseTendsToGreatCircle) {
  const SPoint A(1, 0, 0);
  const SPoint B = from_geo(GeoCoord::make(0, kPi - 1e-3));
  const auto k = lexell_circle_euler(A, B, 1.0);
  EXPECT_NEAR(k.radius, kHalfPi, 2e-3);
}

TEST(Lexell, SmallAreaTendsToBaseCircle) {
  const SPoint A(1, 0, 0), B = from_geo(GeoCoord::make(0, 1.0));
  double prev = kPi;
  for (double area : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto k = lexell_circle_euler(A, B, area);
    const double gap = std::min(dist(k.pole, SPoint(0, 0, 1)), dist(k.pole, SPoint(0, 0, -1)));
    EXPECT_NEAR(k.radius, kHalfPi, 2 * gap + 1e-12);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Lexell, SmallScaleMatchesEuclid) {
  const double base = 1e-3, target = 1e-7;
  const SPoint A = from_geo(GeoCoord::make(0, -base / 2)), B = from_geo(GeoCoord::make(0, base / 2));
  const auto k = lexell_circle_lexell(A, B, target);
  const auto apexes = k.sample_apexes(9);
  const double height = std::asin(apexes[4].z());
  const PlanarLocus planar = euclid_locus(base, target);
  EXPECT_NEAR(height / planar.point.y(), 1.0, 0.01);
}

TEST(Lexell, Errors) {
  const SPoint A(1, 0, 0);
  try {
    lexell_circle_euler(A, A, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateBase);
  }
  try {
    lexell_circle_lexell(A, SPoint(0, 1, 0), 7.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArea);
  }
  EXPECT_THROW(lexell_circle_euler(A, -A, 1.0), Error);
}

TEST(Parallelogram, MirrorPairHasZeroResidual) {
  const GreatCircle g(SPoint(0, 0, 1));
  const double d = 0.4;
  const SPoint E = from_geo(GeoCoord::make(d, 0.3)), e = from_geo(GeoCoord::make(-d, 0.9));
  const auto r = parallelogram_lemma_check(g, d, E, e);
  EXPECT_LT(r.length, 1e-12);
  EXPECT_LT(r.angle, 1e-12);
}

TEST(Parallelogram, RandomPairs) {
  Rng rng(35);
  const GreatCircle g(random_point(rng));
  const auto [far, near] = equidistant_circles(g, 0.4);
  for (int i = 0; i < 200; ++i) {
    const SPoint E = far.point_at(uniform(rng, -kPi, kPi));
    const SPoint e = near.point_at(uniform(rng, -kPi, kPi));
    if (dist(E, e) > kPi - 0.05) continue;
    const auto r = parallelogram_lemma_check(g, 0.4, E, e);
    EXPECT_LT(r.length, 1e-10);
    EXPECT_LT(r.angle, 1e-10);
    EXPECT_TRUE(g.contains(r.crossing));
  }
}

TEST(Parallelogram, DegenerateAndErrors) {
  const GreatCircle g(SPoint(0, 0, 1));
  const auto r = parallelogram_lemma_check(g, 0.0, SPoint(1, 0, 0), SPoint(0, 1, 0));
  EXPECT_EQ(r.length, 0.0);
  EXPECT_EQ(r.angle, 0.0);
  EXPECT_THROW(parallelogram_lemma_check(g, 0.4, from_geo(GeoCoord::make(0.3, 0)), from_geo(GeoCoord::make(-0.4, 1))),
               Error);
}

TEST(Steiner, SquareOnLatitude) {
  std::array<SPoint, 4> q;
  for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(i)] = from_geo(GeoCoord::make(0.6, i * kHalfPi));
  EXPECT_LT(steiner_check(q), 1e-14);
}

TEST(Steiner, RandomConcyclic) {
  Rng rng(36);
  for (int i = 0; i < 200; ++i) {
    const SmallCircle c{random_point(rng), uniform(rng, 0.1, 1.5)};
    std::array<double, 4> t{};
    for (double& v : t) v = uniform(rng, -kPi, kPi);
    std::sort(t.begin(), t.end());
    std::array<SPoint, 4> q;
    for (std::size_t k = 0; k < 4; ++k) q[k] = c.point_at(t[k]);
    EXPECT_LT(steiner_check(q), 1e-9);
  }
}

TEST(Steiner, OffCircle) {
  std::array<SPoint, 4> q;
  for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(i)] = from_geo(GeoCoord::make(0.6, i * kHalfPi));
  q[3] = from_geo(GeoCoord::make(0.601, 3 * kHalfPi));
  try {
    steiner_check(q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConcyclic);
  }
}

TEST(Euclid, Heights) {
  EXPECT_DOUBLE_EQ(euclid_locus(2, 1).point.y(), 1.0);
  EXPECT_DOUBLE_EQ(euclid_locus(1, 0.5).point.y(), 1.0);
  EXPECT_EQ(euclid_locus(1, 0.5).direction, Vec2(1, 0));
  EXPECT_THROW(euclid_locus(0, 1), Error);
}

}  // namespace
}  // namespace sphgeom
