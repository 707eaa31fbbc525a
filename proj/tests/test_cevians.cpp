#include <gtest/gtest.h>

#include "sphgeom/cevians.hpp"
#include "sphgeom/sampling.hpp"

namespace sphgeom {
namespace {

struct SphTri {
  SPoint A, B, C;
};

SphTri random_spherical_triangle(Rng& rng, double lo = 0.3, double hi = 2.0) {
  for (;;) {
    const SPoint A = random_point(rng), B = random_point(rng), C = random_point(rng);
    const double ab = dist(A, B), bc = dist(B, C), ca = dist(C, A);
    if (std::min({ab, bc, ca}) < lo || std::max({ab, bc, ca}) > hi) continue;
    if (std::abs(orientation(A, B, C)) < 0.05) continue;
    return {A, B, C};
  }
}

SPoint interior_point(Rng& rng, const SphTri& t) {
  const double u = uniform(rng, 0.15, 1), v = uniform(rng, 0.15, 1), w = uniform(rng, 0.15, 1);
  return SPoint(u * t.A.vec() + v * t.B.vec() + w * t.C.vec());
}

std::array<Vec2, 3> random_planar_triangle(Rng& rng) {
  for (;;) {
    std::array<Vec2, 3> p{Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1)), Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                          Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1))};
    const Vec2 u = p[1] - p[0], v = p[2] - p[0];
    if (std::abs(u.x() * v.y() - u.y() * v.x()) > 0.3) return p;
  }
}

Vec2 planar_interior(Rng& rng, const std::array<Vec2, 3>& p) {
  const double u = uniform(rng, 0.15, 1), v = uniform(rng, 0.15, 1), w = uniform(rng, 0.15, 1);
  return (u * p[0] + v * p[1] + w * p[2]) / (u + v + w);
}

// Moves a foot along its side by a fraction of the side length.
SphericalCevians perturb(const SphericalCevians& k, double frac) {
  SphericalCevians out = k;
  out.a = travel(k.a, tangent_toward(k.a, k.C), frac * dist(k.B, k.C));
  return out;
}

PlanarCevians perturb(const PlanarCevians& k, double frac) {
  PlanarCevians out = k;
  out.a = k.a + frac * (k.C - k.B);
  return out;
}

// Gnomonic inverse around the tangent point t.
SPoint lift(const Vec2& p, const SPoint& t) {
  auto [e1, e2] = orthonormal_basis(t.vec());
  return SPoint(t.vec() + p.x() * e1 + p.y() * e2);
}

TEST(CevianPoint, PlanarMediansMeetAtCentroid) {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_planar_triangle(rng);
    const PlanarCevians k{p[0], p[1], p[2], (p[1] + p[2]) / 2, (p[2] + p[0]) / 2, (p[0] + p[1]) / 2};
    EXPECT_LT((cevian_point(k) - (p[0] + p[1] + p[2]) / 3).norm(), 1e-12);
  }
}

TEST(CevianPoint, EquilateralSphericalMedians) {
  const SPoint A = from_geo(GeoCoord::make(0.5, 0)), B = from_geo(GeoCoord::make(0.5, kTwoPi / 3)),
               C = from_geo(GeoCoord::make(0.5, -kTwoPi / 3));
  const SphericalCevians k{A, B, C, midpoint(B, C), midpoint(C, A), midpoint(A, B)};
  EXPECT_LT(dist(cevian_point(k), SPoint(0, 0, 1)), 1e-12);
  EXPECT_LT(euler_relation_residual_spherical(k), 1e-9);
}

TEST(CevianPoint, PerturbedFootIsNotConcurrent) {
  const SPoint A = from_geo(GeoCoord::make(0.5, 0)), B = from_geo(GeoCoord::make(0.5, kTwoPi / 3)),
               C = from_geo(GeoCoord::make(0.5, -kTwoPi / 3));
  SphericalCevians k{A, B, C, midpoint(B, C), midpoint(C, A), midpoint(A, B)};
  k.a = travel(k.a, tangent_toward(k.a, C), 1e-2);
  try {
    cevian_point(k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConcurrent);
    EXPECT_NE(std::string(e.what()).find("spread"), std::string::npos);
  }
}

TEST(CevianPoint, InvalidFoot) {
  const PlanarCevians k{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(0.5, 0.6), Vec2(0, 0.5), Vec2(0.5, 0)};
  try {
    cevian_point(k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(Euclidean, MediansSatisfyBothRelations) {
  const PlanarCevians k{Vec2(0, 0), Vec2(4, 0), Vec2(1, 3), Vec2(2.5, 1.5), Vec2(0.5, 1.5), Vec2(2, 0)};
  EXPECT_LT(euler_relation_residual_euclidean(k), 1e-13);
  EXPECT_LT(euler_identity_residual_euclidean(k), 1e-14);
  EXPECT_LT(ceva_residual(k), 1e-14);
}

TEST(Euclidean, ConcurrentAndPerturbedConfigs) {
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    const auto p = random_planar_triangle(rng);
    const auto k = cevians_through(p[0], p[1], p[2], planar_interior(rng, p));
    EXPECT_LT(euler_relation_residual_euclidean(k), 1e-9);
    EXPECT_LT(euler_identity_residual_euclidean(k), 1e-9);
    EXPECT_LT(ceva_residual(k), 1e-9);
    EXPECT_NO_THROW(cevian_point(k));

    const auto q = perturb(k, uniform(rng, 0.02, 0.1) * (rng() % 2 ? 1 : -1));
    EXPECT_GT(euler_relation_residual_euclidean(q), 1e-4);
    EXPECT_GT(ceva_residual(q), 1e-4);
    EXPECT_THROW(cevian_point(q), Error);
  }
}

TEST(Euclidean, ExteriorPointKeepsRelations) {
  const Vec2 A(0, 0), B(2, 0), C(0, 2), O(3, 3);
  const auto k = cevians_through(A, B, C, O);
  EXPECT_LT(euler_relation_residual_euclidean(k), 1e-9);
  EXPECT_LT(euler_identity_residual_euclidean(k), 1e-9);
  EXPECT_LT(ceva_residual(k), 1e-9);
}

TEST(Euclidean, IdentityAsPointApproachesVertex) {
  const Vec2 A(0, 0), B(3, 0), C(1, 2);
  for (double s : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const Vec2 O = (1 - 2 * s) * A + s * B + s * C;
    const auto k = cevians_through(A, B, C, O);
    EXPECT_LT(euler_identity_residual_euclidean(k), 1e-9);
  }
}

TEST(Spherical, ConcurrentAndPerturbedConfigs) {
  Rng rng(43);
  for (int i = 0; i < 500; ++i) {
    const SphTri t = random_spherical_triangle(rng);
    const auto k = cevians_through(t.A, t.B, t.C, interior_point(rng, t));
    EXPECT_LT(euler_relation_residual_spherical(k), 1e-9);
    EXPECT_LT(ceva_residual(k), 1e-9);
    EXPECT_NO_THROW(cevian_point(k));
    const auto rep = spherical_identity_probe(k);
    EXPECT_LT(rep.product_form_residual, 1e-9);
    EXPECT_LT(rep.weight_residual, 1e-9);

    const auto q = perturb(k, uniform(rng, 0.02, 0.1) * (rng() % 2 ? 1 : -1));
    EXPECT_GT(euler_relation_residual_spherical(q), 1e-4);
    EXPECT_GT(ceva_residual(q), 1e-4);
    EXPECT_THROW(cevian_point(q), Error);
  }
}

TEST(Spherical, EuclideanLimitOfResiduals) {
  Rng rng(44);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_planar_triangle(rng);
    const double s = 5e-4;
    const auto kp = perturb(cevians_through(p[0], p[1], p[2], planar_interior(rng, p)), 0.05);
    const PlanarCevians small{s * kp.A, s * kp.B, s * kp.C, s * kp.a, s * kp.b, s * kp.c};
    const SPoint tp = random_point(rng);
    const SphericalCevians ks{lift(small.A, tp), lift(small.B, tp), lift(small.C, tp),
                              lift(small.a, tp), lift(small.b, tp), lift(small.c, tp)};
    const double flat = euler_relation_residual_euclidean(small);
    const double round = euler_relation_residual_spherical(ks);
    EXPECT_NEAR(round / flat, 1.0, 0.01);
  }
}

TEST(Spherical, TinyMediansMatchEuclidean) {
  const SPoint t(0.3, -0.2, 0.9);
  const Vec2 P[3] = {Vec2(0, 0), Vec2(1e-3, 0), Vec2(3e-4, 8e-4)};
  const SPoint A = lift(P[0], t), B = lift(P[1], t), C = lift(P[2], t);
  const SphericalCevians k{A, B, C, midpoint(B, C), midpoint(C, A), midpoint(A, B)};
  EXPECT_LT(euler_relation_residual_spherical(k), 1e-6);
  const auto rep = spherical_identity_probe(k);
  EXPECT_NEAR(rep.printed_sum, 6.0, 1e-4);
  EXPECT_FALSE(rep.printed_holds);
  EXPECT_GT(rep.printed_residual, 4.0);
  EXPECT_NEAR(rep.inverse_sum, 1.5, 1e-4);
  EXPECT_LT(rep.weight_residual, 1e-9);
  EXPECT_LT(rep.product_form_residual, 1e-6);
  EXPECT_LT(rep.foot_ratio_residual, 1e-6);
}

TEST(Ceva, SphericalEquivalence) {
  // Ceva and the tangent relation agree on concurrency in both directions.
  Rng rng(45);
  int concurrent = 0;
  for (int i = 0; i < 300; ++i) {
    const SphTri t = random_spherical_triangle(rng);
    auto k = cevians_through(t.A, t.B, t.C, interior_point(rng, t));
    if (i % 2) k = perturb(k, uniform(rng, -0.1, 0.1));
    const bool by_ceva = ceva_residual(k) < 1e-9;
    const bool by_euler = euler_relation_residual_spherical(k) < 1e-9;
    bool by_point = true;
    try {
      cevian_point(k);
    } catch (const Error&) {
      by_point = false;
    }
    EXPECT_EQ(by_ceva, by_euler);
    EXPECT_EQ(by_ceva, by_point);
    concurrent += by_ceva;
  }
  EXPECT_GE(concurrent, 150);
}

TEST(Construct, MedianData) {
  const CevianLengths L{2, 1, 2, 1, 2, 1};
  const auto t = construct_from_cevians(L, std::array<double, 3>{kTwoPi / 3, kTwoPi / 3, kTwoPi / 3});
  const auto& k = t.config;
  const double ab = (k.A - k.B).norm(), bc = (k.B - k.C).norm(), ca = (k.C - k.A).norm();
  EXPECT_NEAR(ab, bc, 1e-12);
  EXPECT_NEAR(bc, ca, 1e-12);
  EXPECT_LT((k.a - (k.B + k.C) / 2).norm(), 1e-12);
}

TEST(Construct, RoundTripFromRandomTriangles) {
  Rng rng(46);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_planar_triangle(rng);
    const Vec2 O = planar_interior(rng, p);
    const auto k = cevians_through(p[0], p[1], p[2], O);
    const CevianLengths L{(k.A - O).norm(), (k.a - O).norm(), (k.B - O).norm(),
                          (k.b - O).norm(), (k.C - O).norm(), (k.c - O).norm()};
    auto angle = [&](const Vec2& x, const Vec2& y) {
      const Vec2 u = x - O, v = y - O;
      return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
    };
    const auto t = construct_from_cevians(L, std::array<double, 3>{angle(k.A, k.B), angle(k.B, k.C), angle(k.C, k.A)});
    const auto& r = t.config;
    auto off = [](const Vec2& P, const Vec2& Q, const Vec2& x) {
      const Vec2 d = (Q - P).normalized();
      return std::abs(d.x() * (x - P).y() - d.y() * (x - P).x());
    };
    EXPECT_LT(off(r.B, r.C, r.a), 1e-9);
    EXPECT_LT(off(r.C, r.A, r.b), 1e-9);
    EXPECT_LT(off(r.A, r.B, r.c), 1e-9);
    EXPECT_NEAR((r.A - r.a).norm(), (k.A - k.a).norm(), 1e-9);
    EXPECT_NEAR((r.B - r.b).norm(), (k.B - k.b).norm(), 1e-9);
    EXPECT_NEAR((r.C - r.c).norm(), (k.C - k.c).norm(), 1e-9);
    EXPECT_NEAR((r.A - r.B).norm(), (k.A - k.B).norm(), 1e-9);
  }
}

TEST(Construct, RelationViolated) {
  try {
    construct_from_cevians(CevianLengths{2, 1, 2, 1, 2.01, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RelationViolated);
  }
  EXPECT_THROW(construct_from_cevians(CevianLengths{2, 1, 2, 1, 2, 1}, std::array<double, 3>{2.0, 2.0, 2.28}), Error);
}

}  // namespace
}  // namespace sphgeom
