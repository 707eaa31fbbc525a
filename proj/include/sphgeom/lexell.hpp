#ifndef SPHGEOM_LEXELL_HPP
#define SPHGEOM_LEXELL_HPP

// The locus of apexes of triangles with a fixed base and a fixed area: a
// small circle through the antipodes of the base endpoints. Built two ways
// (from an auxiliary isosceles triangle, and from the angle at the antipode
// of A), together with the supporting lemmas and the planar analogue.

#include <array>
#include <cmath>
#include <utility>

#include "sphgeom/area.hpp"
#include "sphgeom/core.hpp"

namespace sphgeom {

/// Apexes on the locus lie on the left of the directed base A -> B, i.e. in
/// the hemisphere of A x B.
struct LexellConstruction {
  SPoint A, B;
  double area = 0;        ///< target area (full excess)
  SPoint apex_pole;       ///< P: apex of the auxiliary isosceles triangle
  SPoint pole;            ///< p = antipode(P), center of the locus circle
  double base_angle = 0;  ///< phi = (pi - area) / 2
  double radius = 0;      ///< angular radius of the locus circle
  SPoint O;               ///< antipode of A
  SPoint C;               ///< base midpoint
  SPoint M;               ///< antipode of C

  SmallCircle circle() const { return SmallCircle{pole, radius}; }

  SPoint apex_side() const { return SPoint(A.vec().cross(B.vec())); }

  /// Points of the circle strictly on the apex side of the base great circle.
  bool on_locus_arc(const SPoint& v, double tol = kTolerance) const {
    return circle().contains(v, tol) && v.dot(apex_side()) > tol;
  }

  /// Samples `n` apexes on the open locus arc, evenly in the circle parameter.
  std::vector<SPoint> sample_apexes(int n) const {
    // The arc runs between the antipodes of A and B.
    const SmallCircle k = circle();
    double t0 = k.param_of(-A), t1 = k.param_of(-B);
    const SPoint probe = k.point_at(0.5 * (t0 + t1));
    if (probe.dot(apex_side()) <= 0) t1 += (t1 < t0 ? kTwoPi : -kTwoPi);
    std::vector<SPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) out.push_back(k.point_at(t0 + (t1 - t0) * i / (n + 1.0)));
    return out;
  }
};

namespace detail {

inline void check_lexell_input(const SPoint& A, const SPoint& B, double area) {
  const double d = dist(A, B);
  if (!(d > 1e-12 && d < kPi - 1e-12)) fail(ErrorCode::DegenerateBase, "base endpoints must be distinct and not antipodal");
  if (!(area > 0.0 && area < kTwoPi)) fail(ErrorCode::InvalidArea, "area must lie in (0, 2 pi)");
}

inline SPoint on_bisector_from(const SPoint& from, const Vec3& dir, const SPoint& A, const SPoint& B) {
  const GreatCircle ray(SPoint(from.vec().cross(dir)));
  const GreatCircle bisector(SPoint(B.vec() - A.vec()));
  auto [p, q] = intersect(ray, bisector);
  return p.dot(from) > 0 ? p : q;
}

}  // namespace detail

/// Radius of the locus circle: tan x = tan(a/2) / sin(area/2), a = |AB|.
inline double lexell_radius(double base, double area) {
  return std::atan2(std::tan(base / 2), std::sin(area / 2));
}

/// The radius relation in the form tan x = tan(a/2) / tan(area/2). It does
/// not agree with the circle through the base antipodes except in the limits
/// area -> 0 and a -> pi.
inline double lexell_radius_printed(double base, double area) {
  double x = std::atan(std::tan(base / 2) / std::tan(area / 2));
  if (x < 0) x += kPi;
  return x;
}

/// Construction from the isosceles triangle ABP with base angles
/// phi = (pi - area) / 2 erected away from the apex side (towards it when
/// phi < 0). The locus is the circle about antipode(P) with radius PA.
inline LexellConstruction lexell_circle_euler(const SPoint& A, const SPoint& B, double area) {
  detail::check_lexell_input(A, B, area);
  LexellConstruction k;
  k.A = A;
  k.B = B;
  k.area = area;
  k.base_angle = 0.5 * (kPi - area);
  k.O = -A;
  k.C = midpoint(A, B);
  k.M = -k.C;
  const Vec3 side = k.apex_side().vec();
  const Vec3 dir = std::cos(k.base_angle) * tangent_toward(A, B) - std::sin(k.base_angle) * side;
  k.apex_pole = detail::on_bisector_from(A, dir, A, B);
  k.pole = -k.apex_pole;
  k.radius = dist(k.apex_pole, A);
  return k;
}

/// Construction through O = antipode(A): the ray from O making the angle
/// 90deg - delta with OM meets the perpendicular bisector CM in the pole.
/// Here delta is half of the target area (area = 2 delta).
inline LexellConstruction lexell_circle_lexell(const SPoint& A, const SPoint& B, double area) {
  detail::check_lexell_input(A, B, area);
  LexellConstruction k;
  k.A = A;
  k.B = B;
  k.area = area;
  k.base_angle = 0.5 * (kPi - area);
  k.O = -A;
  k.C = midpoint(A, B);
  k.M = -k.C;
  const double delta = 0.5 * area;
  const double pom = kHalfPi - delta;
  const Vec3 side = k.apex_side().vec();
  const Vec3 dir = std::cos(pom) * tangent_toward(k.O, k.M) + std::sin(pom) * side;
  k.pole = detail::on_bisector_from(k.O, dir, A, B);
  k.apex_pole = -k.pole;
  k.radius = dist(k.pole, k.O);
  return k;
}

/// Distance MO of the construction; equals half the base.
inline double lexell_mo(const LexellConstruction& k) { return dist(k.M, k.O); }

/// Residuals of the parallelogram lemma for an arc from E (on one of the two
/// circles at distance d from g) to e (on the other), crossing g at O:
/// |eO - EO| and the difference of the angles the arc makes with the circles.
struct ParallelogramResidual {
  double length = 0;
  double angle = 0;
  SPoint crossing;
};

inline ParallelogramResidual parallelogram_lemma_check(const GreatCircle& g, double d, const SPoint& E, const SPoint& e,
                                                       double tol = kTolerance) {
  if (d < tol) return {0.0, 0.0, E};
  const SPoint& n = g.pole();
  const double hE = std::asin(std::clamp(E.dot(n), -1.0, 1.0));
  const double he = std::asin(std::clamp(e.dot(n), -1.0, 1.0));
  if (std::abs(std::abs(hE) - d) > 1e-7 || std::abs(std::abs(he) - d) > 1e-7 || hE * he >= 0) {
    fail(ErrorCode::PointNotOnCircle, "E and e must lie on the two circles at distance d on opposite sides");
  }
  const Vec3 along = E.vec().cross(e.vec());
  if (along.norm() < 1e-14) fail(ErrorCode::ArcMissesCircle, "E and e do not span a unique arc");
  auto [p, q] = intersect(GreatCircle(SPoint(along)), g);
  // The crossing lies on the minor arc Ee.
  SPoint O = p;
  if (std::abs(dist(E, p) + dist(p, e) - dist(E, e)) > 1e-9) O = q;
  if (std::abs(dist(E, O) + dist(O, e) - dist(E, e)) > 1e-9) fail(ErrorCode::ArcMissesCircle, "arc Ee misses g");

  // Tangents along the two circles in corresponding (half-turn about O) directions.
  const Vec3 tE = n.vec().cross(E.vec()).normalized();
  const Vec3 te = -n.vec().cross(e.vec()).normalized();
  auto angle_with = [](const SPoint& at, const Vec3& t, const SPoint& toward) {
    const Vec3 u = tangent_toward(at, toward);
    return std::atan2(t.cross(u).norm(), t.dot(u));
  };
  ParallelogramResidual r;
  r.crossing = O;
  r.length = std::abs(dist(e, O) - dist(E, O));
  r.angle = std::abs(angle_with(e, te, O) - angle_with(E, tE, O));
  return r;
}

/// Opposite-angle sums of a quadrilateral inscribed in a small circle:
/// returns |(A + C) - (B + D)| for the cyclic order q1 q2 q3 q4.
inline double steiner_check(const std::array<SPoint, 4>& q, double tol = kTolerance) {
  const Vec3 n = (q[1].vec() - q[0].vec()).cross(q[2].vec() - q[0].vec());
  if (n.norm() < 1e-14) fail(ErrorCode::NotConcyclic, "first three points are collinear");
  SPoint pole(n);
  if (pole.dot(q[0]) < 0) pole = -pole;
  const SmallCircle circle{pole, dist(pole, q[0])};
  for (const auto& p : q) {
    if (!circle.contains(p, tol)) fail(ErrorCode::NotConcyclic, "points do not lie on one small circle");
  }
  std::array<double, 4> ang{};
  for (int i = 0; i < 4; ++i) ang[i] = interior_angle(q[i], q[(i + 3) % 4], q[(i + 1) % 4]);
  return std::abs((ang[0] + ang[2]) - (ang[1] + ang[3]));
}

/// Planar analogue: the apex locus over a base on the x-axis centered at the
/// origin is the horizontal line at height 2 area / base.
struct PlanarLocus {
  Vec2 point;
  Vec2 direction;
};

inline PlanarLocus euclid_locus(double base_length, double area) {
  if (!(base_length > 0.0) || !(area > 0.0)) fail(ErrorCode::OutOfRange, "base length and area must be positive");
  return {Vec2(0.0, 2.0 * area / base_length), Vec2(1.0, 0.0)};
}

}  // namespace sphgeom

#endif  // SPHGEOM_LEXELL_HPP
