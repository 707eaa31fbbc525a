#include <gtest/gtest.h>

#include "sphgeom/extremal.hpp"
#include "sphgeom/sampling.hpp"

namespace sphgeom {
namespace {

// The constraint meets the base circle between B and the antipode of A, so no
// objective is optimized by a degenerate triangle.
FussInstance random_instance(Rng& rng) {
  const SPoint A = random_point(rng);
  const SPoint B = travel(A, tangent_toward(A, random_point(rng)), uniform(rng, 0.3, 2.5));
  const double ab = dist(A, B);
  const SPoint X = travel(A, tangent_toward(A, B), uniform(rng, ab + 0.1, kPi - 0.1));
  const Vec3 base_pole = A.vec().cross(B.vec()).normalized();
  const SPoint pole = rotate(SPoint(base_pole), X.vec(), uniform(rng, 0.2, kPi - 0.2));
  return {A, B, GreatCircle(pole)};
}

struct GridBest {
  double t, value;
};

// Brute-force oracle over the whole circle.
GridBest grid_oracle(const FussInstance& in, FussObjective obj, int n = 100000) {
  const GreatCircle& g = in.constraint;
  GridBest best{0, obj == FussObjective::MinSideSum ? 1e300 : -1e300};
  for (int i = 0; i < n; ++i) {
    const double t = -kPi + kTwoPi * i / n;
    const SPoint V = g.point_at(t);
    double v = 0;
    switch (obj) {
      case FussObjective::MaxAngle: v = interior_angle(V, in.A, in.B); break;
      case FussObjective::MinSideSum: v = dist(V, in.A) + dist(V, in.B); break;
      case FussObjective::MaxArea:
        if (orientation(in.A, in.B, V) <= 0) continue;
        v = area(SphTriangle::from_vertices(in.A, in.B, V));
        break;
    }
    if (obj == FussObjective::MinSideSum ? v < best.value : v > best.value) best = {t, v};
  }
  return best;
}

double param_gap(double a, double b, double period) {
  const double d = std::remainder(a - b, period);
  return std::abs(d);
}

TEST(Fuss, MatchesGridOracle) {
  Rng rng(61);
  const double cell = kTwoPi / 100000;
  for (int i = 0; i < 20; ++i) {
    const FussInstance in = random_instance(rng);
    for (FussObjective obj : {FussObjective::MaxAngle, FussObjective::MinSideSum, FussObjective::MaxArea}) {
      const FussResult r = fuss_solve(in, obj);
      const GridBest b = grid_oracle(in, obj);
      EXPECT_FALSE(r.optimum_at_boundary) << name(obj);
      const double period = obj == FussObjective::MaxAngle ? kPi : kTwoPi;
      EXPECT_LE(param_gap(r.optimum.t, b.t, period), cell) << name(obj) << " instance " << i;
      if (obj == FussObjective::MinSideSum) {
        EXPECT_LE(r.optimum.value, b.value + 1e-12);
      } else {
        EXPECT_GE(r.optimum.value, b.value - 1e-12);
      }
    }
  }
}

TEST(Fuss, CriticalPointsChangeSlope) {
  Rng rng(62);
  for (int i = 0; i < 20; ++i) {
    const FussInstance in = random_instance(rng);
    for (FussObjective obj : {FussObjective::MaxAngle, FussObjective::MinSideSum, FussObjective::MaxArea}) {
      for (const auto& c : fuss_solve(in, obj).critical) {
        const double f0 = fuss_objective(in, obj, c.vertex);
        const double fl = fuss_objective(in, obj, in.constraint.point_at(c.t - 1e-5));
        const double fr = fuss_objective(in, obj, in.constraint.point_at(c.t + 1e-5));
        const double s = c.kind == FussCritical::Kind::Maximum ? 1.0 : -1.0;
        EXPECT_GE(s * (f0 - fl), -1e-14);
        EXPECT_GE(s * (f0 - fr), -1e-14);
        // Opposite one-sided differences.
        EXPECT_LT((fr - f0) * (f0 - fl), 1e-28);
      }
    }
  }
}

TEST(Fuss, MirrorSymmetricInstance) {
  const FussInstance in{from_geo(GeoCoord::make(0, -0.6)), from_geo(GeoCoord::make(0, 0.6)),
                        great_circle_through(SPoint(0, 0, 1), SPoint(1, 0, 0))};
  for (FussObjective obj : {FussObjective::MaxAngle, FussObjective::MinSideSum, FussObjective::MaxArea}) {
    const auto r = fuss_solve(in, obj);
    // The constraint is the mirror plane itself, so every critical vertex is its own image.
    for (const auto& c : r.critical) EXPECT_LT(std::abs(c.vertex.y()), 1e-12);
    EXPECT_LT(std::abs(r.optimum.vertex.y()), 1e-12);
    // The constraint crosses the base between A and B, where the angle tends to pi and,
    // at the antipodal crossing, the area tends to 2 pi.
    if (obj == FussObjective::MinSideSum) {
      EXPECT_EQ(r.critical.size(), 2u);
      EXPECT_LT(dist(r.optimum.vertex, SPoint(1, 0, 0)), 1e-7);  // a smooth minimum is located to ~sqrt(eps)
    } else {
      EXPECT_TRUE(r.optimum_at_boundary);
    }
  }
}

TEST(Fuss, AsymmetricMirrorPair) {
  // Base symmetric about the xz-plane, constraint symmetric too: critical set maps to itself.
  const FussInstance in{from_geo(GeoCoord::make(0.2, -0.5)), from_geo(GeoCoord::make(0.2, 0.5)),
                        great_circle_through(from_geo(GeoCoord::make(-0.3, 0)), SPoint(0, 1, 0))};
  const auto r = fuss_solve(in, FussObjective::MinSideSum);
  for (const auto& c : r.critical) {
    const SPoint m(c.vertex.x(), -c.vertex.y(), c.vertex.z());
    const bool found = std::any_of(r.critical.begin(), r.critical.end(),
                                   [&](const auto& o) { return dist(o.vertex, m) < 1e-7; });
    EXPECT_TRUE(found);
  }
}

TEST(Fuss, PerpendicularConstraintHasAtMostTwoAngleValues) {
  // Every perpendicular to the base passes through the base's pole, and the
  // angle at V is symmetric about that pole: critical points come as a mirror
  // pair of equal value plus the pole itself, so at most two distinct values.
  Rng rng(63);
  for (int i = 0; i < 20; ++i) {
    const SPoint A = random_point(rng);
    const SPoint B = travel(A, tangent_toward(A, random_point(rng)), uniform(rng, 0.3, 2.5));
    const SPoint X = travel(A, tangent_toward(A, B), uniform(rng, dist(A, B) + 0.1, kPi - 0.1));
    const Vec3 n = A.vec().cross(B.vec()).normalized();
    const FussInstance in{A, B, GreatCircle(SPoint(n.cross(X.vec())))};
    const auto r = fuss_solve(in, FussObjective::MaxAngle);
    std::vector<double> values;
    for (const auto& c : r.critical) {
      if (std::none_of(values.begin(), values.end(), [&](double v) { return std::abs(v - c.value) < 1e-9; })) {
        values.push_back(c.value);
      }
    }
    EXPECT_LE(values.size(), 2u);
    // The count agrees with a fine grid over the positive half circle.
    const GreatCircle& g = in.constraint;
    const int m = 20000;
    std::vector<double> f;
    for (int k = 0; k < m; ++k) {
      const SPoint V = g.point_at(-kPi + kTwoPi * k / m);
      f.push_back(orientation(A, B, V) > 1e-9 ? interior_angle(V, A, B) : std::nan(""));
    }
    int extrema = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double a = f[(k + f.size() - 1) % f.size()], b = f[k], c = f[(k + 1) % f.size()];
      if (std::isnan(a) || std::isnan(b) || std::isnan(c)) continue;
      if ((b > a && b >= c) || (b < a && b <= c)) ++extrema;
    }
    EXPECT_EQ(static_cast<int>(r.critical.size()), extrema);
  }
}

TEST(Fuss, MinSideSumTouchesEllipse) {
  Rng rng(64);
  for (int i = 0; i < 20; ++i) {
    const FussInstance in = random_instance(rng);
    const auto r = fuss_solve(in, FussObjective::MinSideSum);
    const SphericalEllipse e = SphericalEllipse::make(in.A, in.B, r.optimum.value);
    EXPECT_LT(std::abs(ellipse_residual(e, r.optimum.vertex)), 1e-12);
    for (int k = -10; k <= 10; ++k) {
      const SPoint V = in.constraint.point_at(r.optimum.t + 1e-4 * k);
      EXPECT_GE(ellipse_residual(e, V), -1e-14);
    }
  }
}

TEST(Fuss, Errors) {
  const SPoint A(1, 0, 0), B(0, 1, 0);
  try {
    fuss_solve({A, B, GreatCircle(SPoint(0, 0, 1))}, FussObjective::MaxArea);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInstance);
  }
}

TEST(Fuss, BoundarySupremumIsFlagged) {
  // Constraint crossing the base between A and B: the angle at V tends to pi there.
  const SPoint A = from_geo(GeoCoord::make(0, -0.5)), B = from_geo(GeoCoord::make(0, 0.5));
  const FussInstance in{A, B, GreatCircle(rotate(SPoint(0, 0, 1), Vec3::UnitX(), 1.0))};
  EXPECT_TRUE(fuss_solve(in, FussObjective::MaxAngle).optimum_at_boundary);
  EXPECT_TRUE(fuss_solve(in, FussObjective::MaxArea).optimum_at_boundary);
}

TEST(Ellipse, ResidualBasics) {
  const SPoint f1 = from_geo(GeoCoord::make(0, -0.4)), f2 = from_geo(GeoCoord::make(0, 0.4));
  const auto e = SphericalEllipse::make(f1, f2, 1.2);
  EXPECT_NEAR(ellipse_residual(e, from_geo(GeoCoord::make(0, 0.6))), 0.0, 1e-15);
  EXPECT_NEAR(ellipse_residual(e, f1), 0.8 - 1.2, 1e-15);
  EXPECT_THROW(SphericalEllipse::make(f1, f2, 0.7), Error);
  EXPECT_THROW(SphericalEllipse::make(f1, f1, 1.0), Error);
}

TEST(Ellipse, TraceOnLocus) {
  Rng rng(65);
  for (int i = 0; i < 50; ++i) {
    const SPoint f1 = random_point(rng), f2 = random_point(rng);
    const double d = dist(f1, f2);
    if (d < 0.05 || d > kPi - 0.05) continue;
    const auto e = SphericalEllipse::make(f1, f2, uniform(rng, d + 1e-3, kTwoPi - d - 1e-3));
    for (const SPoint& p : ellipse_trace(e, 64)) EXPECT_LT(std::abs(ellipse_residual(e, p)), 1e-10);
  }
}

TEST(Ellipse, ThinAndMinimal) {
  const SPoint f1 = from_geo(GeoCoord::make(0, -0.5)), f2 = from_geo(GeoCoord::make(0, 0.5));
  const auto e = SphericalEllipse::make(f1, f2, 1.0 + 1e-6);
  const auto pts = ellipse_trace(e, 6);
  ASSERT_EQ(pts.size(), 6u);
  for (const SPoint& p : pts) {
    EXPECT_LT(std::abs(ellipse_residual(e, p)), 1e-10);
    EXPECT_LT(std::abs(p.z()), 2e-3);  // hugs the focal segment
  }
  EXPECT_THROW(ellipse_trace(e, 5), Error);
  // Symmetric foci: trace points come in mirror pairs.
  const auto sym = ellipse_trace(SphericalEllipse::make(f1, f2, 2.0), 8);
  for (std::size_t k = 0; k < 8; ++k) {
    const SPoint& p = sym[k];
    const SPoint& q = sym[(8 - k) % 8];
    EXPECT_LT(dist(p, SPoint(q.x(), q.y(), -q.z())), 1e-10);
  }
}

TEST(Ellipse, ConeFitGeneric) {
  Rng rng(66);
  for (int i = 0; i < 30; ++i) {
    const SPoint f1 = random_point(rng), f2 = random_point(rng);
    const double d = dist(f1, f2);
    if (d < 0.1 || d > kPi - 0.1) continue;
    double s = uniform(rng, d + 0.05, kTwoPi - d - 0.05);
    if (std::abs(s - kPi) < 0.05) s += 0.1;
    const auto e = SphericalEllipse::make(f1, f2, s);
    const ConeFit fit = ellipse_cone_check(e);
    EXPECT_LT(fit.residual, 1e-8);
    EXPECT_FALSE(fit.planar);
    EXPECT_NEAR((fit.Q - fit.Q.transpose()).norm(), 0.0, 1e-15);
    // Converse: points of cone and sphere along rays from the focal midpoint satisfy the distance sum.
    const SPoint c = midpoint(f1, f2);
    const Vec3 u = tangent_toward(c, f2), w = c.vec().cross(u);
    for (int k = 0; k < 40; ++k) {
      const double th = 0.37 + kTwoPi * k / 40;
      const Vec3 dir = std::cos(th) * u + std::sin(th) * w;
      auto q = [&](double r) {
        const Vec3 p = travel(c, dir, r).vec();
        return p.dot(fit.Q * p);
      };
      double lo = 0, hi = 0;
      // First sign change of the form along the ray.
      const double q0 = q(0);
      for (int j = 1; j <= 2000; ++j) {
        hi = kPi * j / 2000;
        if ((q(hi) > 0) != (q0 > 0)) break;
        lo = hi;
      }
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((q(mid) > 0) == (q0 > 0) ? lo : hi) = mid;
      }
      // The cone meets the sphere in the ellipse and its antipodal image.
      const SPoint p = travel(c, dir, 0.5 * (lo + hi));
      EXPECT_LT(std::min(std::abs(ellipse_residual(e, p)), std::abs(ellipse_residual(e, -p))), 1e-8);
    }
  }
}

TEST(Ellipse, HalfTurnSumIsGreatCircle) {
  for (double sep : {0.3, 1.7}) {
    const SPoint f1 = from_geo(GeoCoord::make(0, -sep / 2)), f2 = from_geo(GeoCoord::make(0, sep / 2));
    const GreatCircle g = ellipse_degenerate(f1, f2);
    // Foci on the equator at +-lon: the circle is the meridian plane x = 0 ... tilted? pole along f1 + f2.
    EXPECT_LT(dist(g.pole(), SPoint(1, 0, 0)), 1e-15);
    const auto e = SphericalEllipse::make(f1, f2, kPi);
    for (const SPoint& p : ellipse_trace(e, 100)) EXPECT_LT(g.distance_from(p), 1e-10);
    const ConeFit fit = ellipse_cone_check(e);
    EXPECT_TRUE(fit.planar);
    EXPECT_LT(fit.residual, 1e-10);
    EXPECT_LT((fit.Q - g.pole().vec() * g.pole().vec().transpose()).norm(), 1e-8);
  }
  EXPECT_THROW(ellipse_degenerate(SPoint(1, 0, 0), SPoint(-1, 0, 0)), Error);
}

TEST(Ellipse, HalfTurnRandomFoci) {
  Rng rng(67);
  for (int i = 0; i < 20; ++i) {
    const SPoint f1 = random_point(rng), f2 = random_point(rng);
    const double d = dist(f1, f2);
    if (d < 0.05 || d > kPi - 0.05) continue;
    const GreatCircle g = ellipse_degenerate(f1, f2);
    for (const SPoint& p : ellipse_trace(SphericalEllipse::make(f1, f2, kPi), 100)) EXPECT_LT(g.distance_from(p), 1e-10);
  }
}

}  // namespace
}  // namespace sphgeom
