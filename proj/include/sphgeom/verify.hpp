#ifndef SPHGEOM_VERIFY_HPP
#define SPHGEOM_VERIFY_HPP

// End-to-end property checks over every module, each against a brute-force
// or independently derived oracle. Results are deterministic for a seed;
// wall-clock times are reported separately from the pass/fail lines.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sphgeom/area.hpp"
#include "sphgeom/cevians.hpp"
#include "sphgeom/extremal.hpp"
#include "sphgeom/geodesics.hpp"
#include "sphgeom/lexell.hpp"
#include "sphgeom/pappus.hpp"
#include "sphgeom/projections.hpp"
#include "sphgeom/sampling.hpp"
#include "sphgeom/trig.hpp"

namespace sphgeom {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0;  ///< measured worst case
  double bound = 0;
  bool timing = false;  ///< value is a wall-clock time
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline constexpr int kCriteriaCount = 9;

namespace detail {

/// Records `value < bound` (or `value > bound` for lower bounds).
inline void expect_below(CriterionReport& r, std::string name, double value, double bound) {
  r.checks.push_back({std::move(name), value < bound, value, bound, false});
}

inline void expect_above(CriterionReport& r, std::string name, double value, double bound) {
  r.checks.push_back({std::move(name), value > bound, value, bound, false});
}

inline void expect_true(CriterionReport& r, std::string name, bool ok) {
  r.checks.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, false});
}

inline Rng criterion_rng(unsigned long long seed, int id) { return Rng(seed * 1000003ULL + 7919ULL * static_cast<unsigned>(id)); }

inline SphTriangle random_triangle_with_sides(Rng& rng, double lo, double hi) {
  for (;;) {
    const SPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    const double ab = dist(a, b), bc = dist(b, c), ca = dist(c, a);
    if (std::min({ab, bc, ca}) < lo || std::max({ab, bc, ca}) > hi) continue;
    try {
      return SphTriangle::from_vertices(a, b, c);
    } catch (const Error&) {
    }
  }
}

inline double area_by_sides(const SPoint& A, const SPoint& B, const SPoint& C) {
  return area_formula::euler_tan(dist(B, C), dist(C, A), dist(A, B));
}

// ---- 1 -------------------------------------------------------------------

inline void criterion_area(CriterionReport& r, Rng& rng) {
  double spread = 0;
  for (int i = 0; i < 1000; ++i) {
    const SphTriangle t = random_triangle_with_sides(rng, 0.1, 2.9);
    double lo = 1e300, hi = -1e300;
    for (AreaMethod m : kAllAreaMethods) {
      const double v = area(t, m);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double xy = area_lexell_xy(lexell_xy_of(t.A(), t.B(), t.C()));
    spread = std::max({spread, hi - std::min(lo, xy), std::max(hi, xy) - lo});
  }
  expect_below(r, "six area formulas and the base-height formula agree on 1000 triangles", spread, 1e-9);
}

// ---- 2 -------------------------------------------------------------------

inline void criterion_lexell(CriterionReport& r, Rng& rng) {
  double coincide = 0, antipodes = 0, apex_area = 0, printed = 0;
  for (int i = 0; i < 200; ++i) {
    SPoint A, B;
    do {
      A = random_point(rng);
      B = random_point(rng);
    } while (dist(A, B) < 0.1 || dist(A, B) > kPi - 0.1);
    const double area_target = uniform(rng, 0.05, kTwoPi - 0.05);
    const auto e = lexell_circle_euler(A, B, area_target);
    const auto l = lexell_circle_lexell(A, B, area_target);
    coincide = std::max({coincide, dist(e.pole, l.pole), std::abs(e.radius - l.radius)});
    antipodes = std::max({antipodes, e.circle().distance_from(-A), e.circle().distance_from(-B)});
    for (const SPoint& V : e.sample_apexes(50)) {
      apex_area = std::max(apex_area, std::abs(area(SphTriangle::from_vertices(A, B, V)) - area_target));
    }
    printed = std::max(printed, std::abs(lexell_radius_printed(dist(A, B), area_target) - e.radius));
  }
  expect_below(r, "both constructions give the same circle on 200 instances", coincide, 1e-10);
  expect_below(r, "antipodes of the base endpoints lie on the circle", antipodes, 1e-10);
  expect_below(r, "50 sampled apexes per instance reproduce the area", apex_area, 1e-8);
  expect_below(r, "radius equals atan(tan(a/2) / tan(area/2))", printed, 1e-10);
}

// ---- 3 -------------------------------------------------------------------

inline std::array<Vec2, 3> random_planar_triangle(Rng& rng) {
  for (;;) {
    std::array<Vec2, 3> p{Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1)), Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                          Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1))};
    const Vec2 u = p[1] - p[0], v = p[2] - p[0];
    if (std::abs(u.x() * v.y() - u.y() * v.x()) > 0.3) return p;
  }
}

inline Vec2 planar_interior(Rng& rng, const std::array<Vec2, 3>& p) {
  const double u = uniform(rng, 0.15, 1), v = uniform(rng, 0.15, 1), w = uniform(rng, 0.15, 1);
  return (u * p[0] + v * p[1] + w * p[2]) / (u + v + w);
}

inline std::array<SPoint, 3> random_spherical_triangle(Rng& rng) {
  for (;;) {
    const SPoint A = random_point(rng), B = random_point(rng), C = random_point(rng);
    const double ab = dist(A, B), bc = dist(B, C), ca = dist(C, A);
    if (std::min({ab, bc, ca}) < 0.3 || std::max({ab, bc, ca}) > 2.0) continue;
    if (std::abs(orientation(A, B, C)) < 0.05) continue;
    return {A, B, C};
  }
}

inline SPoint gnomonic_lift(const Vec2& p, const SPoint& t) {
  auto [e1, e2] = orthonormal_basis(t.vec());
  return SPoint(t.vec() + p.x() * e1 + p.y() * e2);
}

inline void criterion_cevians(CriterionReport& r, Rng& rng) {
  double eq1 = 0, eq2 = 0, eq3 = 0, ceva = 0, weights = 0;
  double p1 = 1e300, p2 = 1e300, p3 = 1e300, pc = 1e300;
  auto sign = [&] { return rng() % 2 ? 1.0 : -1.0; };
  for (int i = 0; i < 500; ++i) {
    const auto p = random_planar_triangle(rng);
    const auto k = cevians_through(p[0], p[1], p[2], planar_interior(rng, p));
    eq1 = std::max(eq1, euler_relation_residual_euclidean(k));
    eq2 = std::max(eq2, euler_identity_residual_euclidean(k));
    ceva = std::max(ceva, ceva_residual(k));
    PlanarCevians q = k;
    q.a = k.a + uniform(rng, 0.05, 0.1) * sign() * (k.C - k.B);
    p1 = std::min(p1, euler_relation_residual_euclidean(q));
    p2 = std::min(p2, euler_identity_residual_euclidean(q));
    pc = std::min(pc, ceva_residual(q));
  }
  for (int i = 0; i < 500; ++i) {
    const auto t = random_spherical_triangle(rng);
    const double u = uniform(rng, 0.15, 1), v = uniform(rng, 0.15, 1), w = uniform(rng, 0.15, 1);
    const auto k = cevians_through(t[0], t[1], t[2], SPoint(u * t[0].vec() + v * t[1].vec() + w * t[2].vec()));
    eq3 = std::max(eq3, euler_relation_residual_spherical(k));
    ceva = std::max(ceva, ceva_residual(k));
    weights = std::max(weights, spherical_identity_probe(k).weight_residual);
    SphericalCevians q = k;
    q.a = travel(k.a, tangent_toward(k.a, k.C), uniform(rng, 0.05, 0.1) * sign() * dist(k.B, k.C));
    p3 = std::min(p3, euler_relation_residual_spherical(q));
    pc = std::min(pc, ceva_residual(q));
  }
  expect_below(r, "planar product-sum relation on 500 concurrent configurations", eq1, 1e-9);
  expect_below(r, "planar segment-ratio identity on 500 concurrent configurations", eq2, 1e-9);
  expect_below(r, "spherical tangent relation on 500 concurrent configurations", eq3, 1e-9);
  expect_below(r, "Ceva residual on all 1000 concurrent configurations", ceva, 1e-9);
  expect_above(r, "planar product-sum relation rejects 500 perturbed configurations", p1, 1e-4);
  expect_above(r, "planar segment-ratio identity rejects the perturbed configurations", p2, 1e-4);
  expect_above(r, "spherical tangent relation rejects 500 perturbed configurations", p3, 1e-4);
  expect_above(r, "Ceva rejects all perturbed configurations", pc, 1e-4);

  double limit = 0;
  for (int i = 0; i < 50; ++i) {
    const auto p = random_planar_triangle(rng);
    auto kp = cevians_through(p[0], p[1], p[2], planar_interior(rng, p));
    kp.a = kp.a + 0.05 * (kp.C - kp.B);
    const double s = 5e-4;
    const PlanarCevians small{s * kp.A, s * kp.B, s * kp.C, s * kp.a, s * kp.b, s * kp.c};
    const SPoint tp = random_point(rng);
    const SphericalCevians ks{gnomonic_lift(small.A, tp), gnomonic_lift(small.B, tp), gnomonic_lift(small.C, tp),
                              gnomonic_lift(small.a, tp), gnomonic_lift(small.b, tp), gnomonic_lift(small.c, tp)};
    limit = std::max(limit, std::abs(euler_relation_residual_spherical(ks) / euler_relation_residual_euclidean(small) - 1.0));
  }
  expect_below(r, "tiny spherical triangles reproduce the planar relation (relative gap)", limit, 0.01);

  const SPoint tp(0.3, -0.2, 0.9);
  const SPoint A = gnomonic_lift(Vec2(0, 0), tp), B = gnomonic_lift(Vec2(1e-3, 0), tp), C = gnomonic_lift(Vec2(3e-4, 8e-4), tp);
  const auto rep = spherical_identity_probe(SphericalCevians{A, B, C, midpoint(B, C), midpoint(C, A), midpoint(A, B)});
  expect_true(r, "ratio-sum identity as printed fails for tiny medians", !rep.printed_holds);
  expect_below(r, "printed ratio sum for tiny medians is 6 rather than 1 (distance from 6)", std::abs(rep.printed_sum - 6.0), 1e-3);
  expect_below(r, "weighted ratio identity holds for tiny medians", rep.weight_residual, 1e-9);
  expect_below(r, "weighted ratio identity holds on the 500 spherical configurations", weights, 1e-9);
}

// ---- 4 -------------------------------------------------------------------

template <class Point>
double recovery_gap(const std::vector<PappusSolution<Point>>& sols, const std::array<Point, 3>& tri,
                    double (*sep)(const Point&, const Point&)) {
  double best = 1e300;
  for (const auto& s : sols) best = std::min(best, vertex_set_distance<Point>(s.vertices, tri, sep));
  return best;
}

inline double planar_sep(const Vec2& p, const Vec2& q) { return (p - q).norm(); }
inline double sphere_sep(const SPoint& p, const SPoint& q) { return dist(p, q); }

inline double side_parameter(Rng& rng) {
  double s;
  do s = uniform(rng, -1.0, 2.0);
  while (s > -0.1 && s < 1.1 && (s < 0.1 || s > 0.9));
  return s;
}

inline void criterion_pappus(CriterionReport& r, Rng& rng) {
  double planar_inc = 0, planar_gap = 0, sphere_inc = 0, sphere_gap = 0, coll_inc = 0, coll_gap = 0;
  for (int n = 0; n < 100;) {
    const PlanarCircle c{Vec2(uniform(rng, -1, 1), uniform(rng, -1, 1)), uniform(rng, 0.5, 2)};
    std::array<Vec2, 3> tri;
    for (auto& v : tri) v = c.point_at(uniform(rng, -kPi, kPi));
    if (std::min({(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(), (tri[2] - tri[0]).norm()}) < 0.2 * c.radius) continue;
    PlanarPappus inst{c, {}};
    bool ok = true;
    for (std::size_t k = 0; k < 3; ++k) {
      inst.targets[k] = tri[k] + side_parameter(rng) * (tri[(k + 1) % 3] - tri[k]);
      ok = ok && c.distance_from(inst.targets[k]) > 1e-3;
    }
    if (!ok) continue;
    ++n;
    try {
      const auto sols = solve_pappus(inst);
      for (const auto& s : sols) planar_inc = std::max(planar_inc, s.incidence_residual);
      planar_gap = std::max(planar_gap, recovery_gap<Vec2>(sols, tri, planar_sep));
    } catch (const Error&) {
      planar_gap = 1e300;
    }
  }
  for (int n = 0; n < 100;) {
    const SmallCircle c{random_point(rng), uniform(rng, 0.3, 1.4)};
    std::array<SPoint, 3> tri;
    for (auto& v : tri) v = c.point_at(uniform(rng, -kPi, kPi));
    if (std::min({dist(tri[0], tri[1]), dist(tri[1], tri[2]), dist(tri[2], tri[0])}) < 0.2 * c.radius) continue;
    SphericalPappus inst{c, {}};
    bool ok = true;
    for (std::size_t k = 0; k < 3; ++k) {
      const SPoint& u = tri[k];
      const SPoint& w = tri[(k + 1) % 3];
      inst.targets[k] = travel(u, tangent_toward(u, w), side_parameter(rng) * dist(u, w));
      ok = ok && PappusTraits<SmallCircle>::clearance(c, inst.targets[k]) > 1e-3;
    }
    if (!ok) continue;
    ++n;
    try {
      const auto sols = solve_pappus(inst);
      for (const auto& s : sols) sphere_inc = std::max(sphere_inc, s.incidence_residual);
      sphere_gap = std::max(sphere_gap, recovery_gap<SPoint>(sols, tri, sphere_sep));
    } catch (const Error&) {
      sphere_gap = 1e300;
    }
  }
  for (int n = 0; n < 30;) {
    const PlanarCircle c{Vec2(0, 0), 1};
    std::array<Vec2, 3> tri;
    for (auto& v : tri) v = c.point_at(uniform(rng, -kPi, kPi));
    if (std::min({(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(), (tri[2] - tri[0]).norm()}) < 0.2) continue;
    // Targets where one transversal line meets the three side lines.
    const Vec2 p0(uniform(rng, -2, 2), uniform(rng, -2, 2));
    const double ang = uniform(rng, 0, kPi);
    const Vec2 d(std::cos(ang), std::sin(ang));
    PlanarPappus inst{c, {}};
    bool ok = true;
    for (std::size_t k = 0; k < 3 && ok; ++k) {
      const Vec2 e = tri[(k + 1) % 3] - tri[k];
      const double den = d.x() * e.y() - d.y() * e.x();
      if (std::abs(den) < 1e-3) ok = false;
      const Vec2 w = tri[k] - p0;
      inst.targets[k] = p0 + d * ((w.x() * e.y() - w.y() * e.x()) / den);
      if (c.distance_from(inst.targets[k]) < 1e-3) ok = false;
    }
    if (!ok) continue;
    ++n;
    try {
      const auto sols = solve_pappus(inst);
      for (const auto& s : sols) coll_inc = std::max(coll_inc, s.incidence_residual);
      coll_gap = std::max(coll_gap, recovery_gap<Vec2>(sols, tri, planar_sep));
    } catch (const Error&) {
      coll_gap = 1e300;
    }
  }
  expect_below(r, "planar: 100 seeded triangles recovered (vertex gap)", planar_gap, 1e-6);
  expect_below(r, "planar: incidence residual of every solution", planar_inc, 1e-8);
  expect_below(r, "sphere: 100 seeded triangles recovered (vertex gap)", sphere_gap, 1e-6);
  expect_below(r, "sphere: incidence residual of every solution", sphere_inc, 1e-8);
  expect_below(r, "collinear targets: 30 triangles recovered (vertex gap)", coll_gap, 1e-6);
  expect_below(r, "collinear targets: incidence residual of every solution", coll_inc, 1e-8);
}

// ---- 5 -------------------------------------------------------------------

inline FussInstance random_fuss_instance(Rng& rng) {
  const SPoint A = random_point(rng);
  const SPoint B = travel(A, tangent_toward(A, random_point(rng)), uniform(rng, 0.3, 2.5));
  const double ab = dist(A, B);
  const SPoint X = travel(A, tangent_toward(A, B), uniform(rng, ab + 0.1, kPi - 0.1));
  const SPoint pole = rotate(SPoint(A.vec().cross(B.vec())), X.vec(), uniform(rng, 0.2, kPi - 0.2));
  return {A, B, GreatCircle(pole)};
}

inline void criterion_fuss(CriterionReport& r, Rng& rng) {
  constexpr int kGrid = 100000;
  const double cell = kTwoPi / kGrid;
  double worst[3] = {0, 0, 0};
  bool values_ok = true;
  for (int i = 0; i < 50; ++i) {
    const FussInstance in = random_fuss_instance(rng);
    const GreatCircle& g = in.constraint;
    // One pass over the grid for all three objectives.
    double best_t[3] = {0, 0, 0};
    double best_v[3] = {-1e300, 1e300, -1e300};
    for (int k = 0; k < kGrid; ++k) {
      const double t = -kPi + kTwoPi * k / kGrid;
      const SPoint V = g.point_at(t);
      const double ang = interior_angle(V, in.A, in.B);
      const double sum = dist(V, in.A) + dist(V, in.B);
      if (ang > best_v[0]) best_v[0] = ang, best_t[0] = t;
      if (sum < best_v[1]) best_v[1] = sum, best_t[1] = t;
      if (orientation(in.A, in.B, V) > 0) {
        const double ar = area_by_sides(in.A, in.B, V);
        if (ar > best_v[2]) best_v[2] = ar, best_t[2] = t;
      }
    }
    const FussObjective objs[3] = {FussObjective::MaxAngle, FussObjective::MinSideSum, FussObjective::MaxArea};
    for (int o = 0; o < 3; ++o) {
      const FussResult res = fuss_solve(in, objs[o]);
      const double period = o == 0 ? kPi : kTwoPi;
      const double gap = res.optimum_at_boundary ? 1e300 : std::abs(std::remainder(res.optimum.t - best_t[o], period));
      worst[o] = std::max(worst[o], gap / cell);
      values_ok = values_ok && (o == 1 ? res.optimum.value <= best_v[o] + 1e-12 : res.optimum.value >= best_v[o] - 1e-12);
    }
  }
  expect_below(r, "largest angle: optimum within one grid cell of a 1e5-point scan (cells)", worst[0], 1.0 + 1e-9);
  expect_below(r, "smallest side sum: optimum within one grid cell (cells)", worst[1], 1.0 + 1e-9);
  expect_below(r, "largest area: optimum within one grid cell (cells)", worst[2], 1.0 + 1e-9);
  expect_true(r, "solver optima are never worse than the scan", values_ok);
}

// ---- 6 -------------------------------------------------------------------

inline void criterion_ellipse(CriterionReport& r, Rng& rng) {
  double cone = 0;
  bool none_planar = true;
  for (int n = 0; n < 30;) {
    const SPoint f1 = random_point(rng), f2 = random_point(rng);
    const double d = dist(f1, f2);
    if (d < 0.1 || d > kPi - 0.1) continue;
    const double s = uniform(rng, d + 0.05, kTwoPi - d - 0.05);
    if (std::abs(s - kPi) < 0.05) continue;
    ++n;
    const ConeFit fit = ellipse_cone_check(SphericalEllipse::make(f1, f2, s));
    cone = std::max(cone, fit.residual);
    none_planar = none_planar && !fit.planar;
  }
  expect_below(r, "30 ellipses lie on their fitted central quadric cone", cone, 1e-8);
  expect_true(r, "generic ellipses need a proper cone, not a plane", none_planar);
  for (double sep : {0.3, 1.7}) {
    const SPoint f1 = random_point(rng);
    const SPoint f2 = travel(f1, tangent_toward(f1, random_point(rng)), sep);
    const GreatCircle g = ellipse_degenerate(f1, f2);
    double off = 0;
    for (const SPoint& p : ellipse_trace(SphericalEllipse::make(f1, f2, kPi), 200)) off = std::max(off, g.distance_from(p));
    char label[96];
    std::snprintf(label, sizeof label, "sum pi, focal separation %.1f: locus is the predicted great circle", sep);
    expect_below(r, label, off, 1e-10);
  }
}

// ---- 7 -------------------------------------------------------------------

inline void criterion_geodesics(CriterionReport& r, Rng& rng) {
  double len = 0, drift = 0;
  for (int i = 0; i < 100; ++i) {
    const SPoint p = random_point(rng);
    const SPoint q = random_point_at(rng, p, uniform(rng, 0.05, 3.0));
    const auto sol = geodesic_connect(p, q);
    len = std::max(len, std::abs(sol.length - std::acos(clamp_unit(p.dot(q)))));
    drift = std::max(drift, sol.drift);
  }
  expect_below(r, "shooting lengths match arccos(p.q) on 100 pairs", len, 1e-6);
  expect_below(r, "first integral drift along every solution", drift, 1e-8);

  const Vec2 start(1.0, 0.2);
  const double heading = 0.7, L = 2.0;
  const Vec3 p0 = surface_to_vec(start.x(), start.y());
  const Vec3 north(-std::cos(start.x()) * std::cos(start.y()), -std::cos(start.x()) * std::sin(start.y()), std::sin(start.x()));
  const Vec3 east(-std::sin(start.y()), std::cos(start.y()), 0.0);
  const Vec3 exact = std::cos(L) * p0 + std::sin(L) * (std::cos(heading) * north + std::sin(heading) * east);
  std::vector<double> errs;
  for (double h : {0.1, 0.05, 0.025}) {
    ShootOptions opt;
    opt.step = h;
    opt.reframe = false;
    errs.push_back((geodesic_shoot(start, heading, L, opt).end().vec() - exact).norm());
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double ratio = errs[i - 1] / errs[i];
    char label[96];
    std::snprintf(label, sizeof label, "error ratio when halving step %zu is at least 14", i);
    expect_above(r, label, ratio, 14.0);
    std::snprintf(label, sizeof label, "error ratio when halving step %zu is at most 18", i);
    expect_below(r, label, ratio, 18.0);
  }
}

// ---- 8 -------------------------------------------------------------------

inline void criterion_projections(CriterionReport& r, Rng& rng) {
  const SPoint t(0.3, -0.5, 0.8);
  const std::vector<Projection> kinds = {Projection::stereographic(SPoint(0.1, 0.2, 0.9)), Projection::gnomonic(t),
                                         Projection::mercator(), Projection::lambert_azimuthal(t),
                                         Projection::lambert_cylindrical()};
  double roundtrip = 0;
  for (const auto& pr : kinds) {
    for (const SPoint& p : domain_grid(pr, 50)) roundtrip = std::max(roundtrip, (unproject(pr, project(pr, p)).vec() - p.vec()).norm());
  }
  expect_below(r, "project then unproject on 50x50 grids, every kind", roundtrip, 1e-10);

  for (const auto& pr : {kinds[0], kinds[2]}) {
    double worst = 0;
    for (const SPoint& p : domain_grid(pr, 50)) worst = std::max(worst, conformality_defect(pr, p));
    expect_below(r, std::string(name(pr.kind)) + ": conformality defect on a 50x50 grid", worst, 1e-7);
  }
  for (const auto& pr : {kinds[3], kinds[4]}) {
    double worst = 0;
    for (const SPoint& p : domain_grid(pr, 50)) worst = std::max(worst, std::abs(area_scale_defect(pr, p)));
    expect_below(r, std::string(name(pr.kind)) + ": area scale defect on a 50x50 grid", worst, 1e-7);
  }

  double straight = 0;
  for (int i = 0; i < 100; ++i) {
    const SPoint a = random_point_at(rng, t, uniform(rng, 0.0, 1.2));
    const SPoint b = random_point_at(rng, t, uniform(rng, 0.0, 1.2));
    straight = std::max(straight, geodesic_image_straightness(kinds[1], Arc{a, b}, 64));
  }
  expect_below(r, "gnomonic images of 100 great-circle arcs are straight", straight, 1e-9);

  double lox = 0;
  const SPoint start = from_geo(GeoCoord::make(0.2, -0.4));
  for (int k = 0; k < 16; ++k) {
    const double bearing = kTwoPi * k / 16 + 0.05;
    lox = std::max(lox, loxodrome_mercator_deviation(loxodrome(start, bearing, 1.2, 200), bearing));
  }
  expect_below(r, "mercator images of loxodromes at 16 bearings are straight", lox, 1e-8);

  bool all_fire = true;
  for (const auto& pr : kinds) all_fire = all_fire && nondevelopability_witness(pr, 0.5).non_isometric;
  expect_true(r, "non-developability witness fires for every kind", all_fire);

  double fit = 0, angles = 0;
  for (int i = 0; i < 30; ++i) {
    const SPoint A = random_point_at(rng, SPoint(0, 0, -1), uniform(rng, 0.5, 1.4));
    const SPoint B = random_point_at(rng, A, uniform(rng, 0.3, 1.5));
    const auto chk = lexell_image_check(A, B, uniform(rng, 0.2, 2.0));
    fit = std::max(fit, chk.fit.residual / (chk.fit.is_line ? 1.0 : std::max(1.0, chk.fit.circle.radius)));
    angles = std::max(angles, chk.angle_sum_spread);
  }
  expect_below(r, "stereographic images of fixed-area apexes are concyclic (30 instances)", fit, 1e-8);
  expect_below(r, "those triangles share one angle sum", angles, 1e-9);
}

// ---- 9 -------------------------------------------------------------------

inline std::vector<Vec3> signed_cyclic(double x, double y, double z) {
  std::vector<Vec3> out;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        const Vec3 v(sx * x, sy * y, sz * z);
        for (const Vec3& w : {v, Vec3(v.z(), v.x(), v.y()), Vec3(v.y(), v.z(), v.x())}) {
          if (std::none_of(out.begin(), out.end(), [&](const Vec3& o) { return (o - w).norm() < 1e-12; })) out.push_back(w);
        }
      }
    }
  }
  return out;
}

/// Dihedral angle from the outward face normals, i.e. the dual's vertices:
/// adjacent faces have the closest normals.
inline double dihedral_from_normals(const std::vector<Vec3>& normals) {
  double best = kPi;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const Vec3 u = normals[i].normalized(), v = normals[j].normalized();
      best = std::min(best, std::atan2(u.cross(v).norm(), u.dot(v)));
    }
  }
  return kPi - best;
}

inline void criterion_platonic(CriterionReport& r) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<Vec3> dodeca = signed_cyclic(1, 1, 1);
  for (const Vec3& v : signed_cyclic(0, 1 / phi, phi)) dodeca.push_back(v);
  const std::pair<PlatonicSolid, std::vector<Vec3>> solids[] = {
      {PlatonicSolid::Tetrahedron, {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}},
      {PlatonicSolid::Cube, signed_cyclic(1, 0, 0)},
      {PlatonicSolid::Octahedron, signed_cyclic(1, 1, 1)},
      {PlatonicSolid::Dodecahedron, signed_cyclic(0, 1, phi)},
      {PlatonicSolid::Icosahedron, dodeca},
  };
  const char* names[] = {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"};
  int i = 0;
  for (const auto& [solid, normals] : solids) {
    expect_below(r, std::string(names[i++]) + " dihedral matches face normals", std::abs(platonic_dihedral(solid) - dihedral_from_normals(normals)), 1e-10);
  }
  expect_true(r, "cube dihedral is exactly pi/2", platonic_dihedral(PlatonicSolid::Cube) == kHalfPi);
}

}  // namespace detail

inline const char* criterion_title(int id) {
  switch (id) {
    case 1: return "area formulas agree";
    case 2: return "fixed-area locus";
    case 3: return "cevian relations";
    case 4: return "inscribed triangles through three points";
    case 5: return "extremal vertex on a great circle";
    case 6: return "spherical ellipses and cones";
    case 7: return "geodesics by shooting";
    case 8: return "projections";
    case 9: return "regular solids";
  }
  return "?";
}

/// Runtime budget in seconds, or 0 when none is set.
inline double criterion_budget(int id) {
  switch (id) {
    case 1: return 5;
    case 2: return 10;
    case 4:
    case 5: return 30;
  }
  return 0;
}

inline CriterionReport run_criterion(int id, unsigned long long seed = 0) {
  if (id < 1 || id > kCriteriaCount) fail(ErrorCode::OutOfRange, "criterion must lie in 1..9");
  CriterionReport r;
  r.id = id;
  r.title = criterion_title(id);
  Rng rng = detail::criterion_rng(seed, id);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: detail::criterion_area(r, rng); break;
      case 2: detail::criterion_lexell(r, rng); break;
      case 3: detail::criterion_cevians(r, rng); break;
      case 4: detail::criterion_pappus(r, rng); break;
      case 5: detail::criterion_fuss(r, rng); break;
      case 6: detail::criterion_ellipse(r, rng); break;
      case 7: detail::criterion_geodesics(r, rng); break;
      case 8: detail::criterion_projections(r, rng); break;
      case 9: detail::criterion_platonic(r); break;
    }
  } catch (const Error& e) {
    r.checks.push_back({std::string("unexpected error: ") + e.what(), false, 0, 0, false});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (const double budget = criterion_budget(id); budget > 0) {
    char label[48];
    std::snprintf(label, sizeof label, "runtime under %g s", budget);
    r.checks.push_back({label, r.seconds < budget, r.seconds, budget, true});
  }
  return r;
}

/// Pass/fail lines of a report. Timing values are left out so that the text
/// depends only on the seed.
inline std::string format_report(const CriterionReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "criterion %d: %s  %s\n", r.id, r.passed() ? "PASS" : "FAIL", r.title.c_str());
  out += buf;
  for (const Check& c : r.checks) {
    if (c.timing) {
      std::snprintf(buf, sizeof buf, "  [%s] %s\n", c.passed ? "pass" : "FAIL", c.name.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "  [%s] %s: %.3g (bound %.3g)\n", c.passed ? "pass" : "FAIL", c.name.c_str(), c.value, c.bound);
    }
    out += buf;
  }
  return out;
}

}  // namespace sphgeom

#endif  // SPHGEOM_VERIFY_HPP
