#ifndef SPHGEOM_CEVIANS_HPP
#define SPHGEOM_CEVIANS_HPP

// Concurrency relations for three cevians Aa, Bb, Cc of a triangle, in the
// plane (Point = Vec2) and on the sphere (Point = SPoint).
//
// Lengths along a cevian are signed: positions are measured from the vertex
// in the direction of its foot, so a concurrency point outside the triangle
// gives negative ratios and the relations keep holding.
//
// The residual functions never throw on non-concurrent input. Each cevian
// is cut by the other two lines; its point O is the midpoint of those two
// cuts, which reduces to the common point for concurrent cevians.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <type_traits>

#include "sphgeom/core.hpp"
#include "sphgeom/planar.hpp"

namespace sphgeom {

template <class Point>
struct CevianConfig {
  Point A, B, C;
  Point a, b, c;  ///< feet on the carriers of BC, CA, AB
};

using PlanarCevians = CevianConfig<Vec2>;
using SphericalCevians = CevianConfig<SPoint>;

/// Spread above which the three pairwise intersections are not one point.
inline constexpr double kConcurrencySpread = 1e-6;

namespace detail {

template <class Point>
inline constexpr bool kSpherical = std::is_same_v<Point, SPoint>;

inline double separation(const Vec2& p, const Vec2& q) { return (p - q).norm(); }
inline double separation(const SPoint& p, const SPoint& q) { return dist(p, q); }

inline Vec2 halfway(const Vec2& p, const Vec2& q) { return 0.5 * (p + q); }
inline SPoint halfway(const SPoint& p, const SPoint& q) { return midpoint(p, q); }

/// Signed position of x along the line from p through q, measured from p.
inline double position(const Vec2& p, const Vec2& q, const Vec2& x) { return (x - p).dot((q - p).normalized()); }
inline double position(const SPoint& p, const SPoint& q, const SPoint& x) {
  return std::atan2(x.vec().dot(tangent_toward(p, q)), x.dot(p));
}

/// Distance from x to the line (great circle) through p and q.
inline double off_line(const Vec2& p, const Vec2& q, const Vec2& x) { return line_distance(p, q, x); }
inline double off_line(const SPoint& p, const SPoint& q, const SPoint& x) { return great_circle_through(p, q).distance_from(x); }

/// Intersection of line p1p2 with line q1q2; on the sphere the one of the
/// antipodal pair closer to `near`.
inline std::optional<Vec2> meet(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2, const Vec2&) {
  const Vec2 r = p2 - p1, s = q2 - q1;
  const double den = r.x() * s.y() - r.y() * s.x();
  if (std::abs(den) < 1e-300) return std::nullopt;
  const Vec2 w = q1 - p1;
  return p1 + r * ((w.x() * s.y() - w.y() * s.x()) / den);
}
inline std::optional<SPoint> meet(const SPoint& p1, const SPoint& p2, const SPoint& q1, const SPoint& q2,
                                  const SPoint& near) {
  const Vec3 v = p1.vec().cross(p2.vec()).cross(q1.vec().cross(q2.vec()));
  if (v.norm() < 1e-300) return std::nullopt;
  const SPoint x(v);
  return x.dot(near) >= 0 ? x : -x;
}

inline double tan_or_identity(double x, bool spherical) { return spherical ? std::tan(x) : x; }

template <class Point>
struct Cut {
  Point O;
  double to_point = 0;  ///< signed XO
  double to_foot = 0;   ///< signed Xx
};

template <class Point>
std::array<Cut<Point>, 3> cuts(const CevianConfig<Point>& k) {
  const std::array<std::pair<Point, Point>, 3> lines{{{k.A, k.a}, {k.B, k.b}, {k.C, k.c}}};
  std::array<Cut<Point>, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& [X, x] = lines[i];
    const auto& [Y, y] = lines[(i + 1) % 3];
    const auto& [Z, z] = lines[(i + 2) % 3];
    const Point near = halfway(X, x);
    const auto p = meet(X, x, Y, y, near);
    const auto q = meet(X, x, Z, z, near);
    if (!p || !q) fail(ErrorCode::InvalidConfig, "cevian lines are parallel or coincide");
    out[i].O = halfway(*p, *q);
    out[i].to_point = position(X, x, out[i].O);
    out[i].to_foot = position(X, x, x);
  }
  return out;
}

template <class Point>
void validate(const CevianConfig<Point>& k, double tol) {
  const std::array<std::array<const Point*, 3>, 3> sides{{{&k.B, &k.C, &k.a}, {&k.C, &k.A, &k.b}, {&k.A, &k.B, &k.c}}};
  for (const auto& s : sides) {
    if (separation(*s[0], *s[1]) < 1e-12) fail(ErrorCode::InvalidConfig, "triangle has coincident vertices");
    if (off_line(*s[0], *s[1], *s[2]) > tol) fail(ErrorCode::InvalidConfig, "foot is not on the opposite side's line");
  }
  const std::array<std::pair<const Point*, const Point*>, 3> cev{{{&k.A, &k.a}, {&k.B, &k.b}, {&k.C, &k.c}}};
  for (const auto& [X, x] : cev) {
    if (separation(*X, *x) < 1e-12) fail(ErrorCode::InvalidConfig, "cevian has zero length");
  }
}

/// Signed ratios XO/Ox for the three cevians, with tangents on the sphere.
template <class Point>
std::array<double, 3> ratios(const CevianConfig<Point>& k) {
  const auto cs = cuts(k);
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double xo = cs[i].to_point, ox = cs[i].to_foot - cs[i].to_point;
    r[i] = tan_or_identity(xo, kSpherical<Point>) / tan_or_identity(ox, kSpherical<Point>);
  }
  return r;
}

inline double product_minus_sum(const std::array<double, 3>& r) { return r[0] * r[1] * r[2] - (r[0] + r[1] + r[2] + 2.0); }

}  // namespace detail

/// Spread of the three pairwise intersections of the cevian lines.
template <class Point>
double concurrency_spread(const CevianConfig<Point>& k) {
  const Point near = detail::halfway(k.A, k.a);
  const auto ab = detail::meet(k.A, k.a, k.B, k.b, near);
  if (!ab) return kPi;
  const auto bc = detail::meet(k.B, k.b, k.C, k.c, *ab);
  const auto ca = detail::meet(k.C, k.c, k.A, k.a, *ab);
  if (!bc || !ca) return kPi;
  return std::max({detail::separation(*ab, *bc), detail::separation(*bc, *ca), detail::separation(*ca, *ab)});
}

/// The common point of the three cevian lines.
template <class Point>
Point cevian_point(const CevianConfig<Point>& k, double tol = kTolerance) {
  detail::validate(k, tol);
  const double spread = concurrency_spread(k);
  if (spread > kConcurrencySpread) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "cevians are not concurrent (spread %.3e)", spread);
    fail(ErrorCode::NotConcurrent, buf);
  }
  return detail::cuts(k)[0].O;
}

/// Feet of the cevians from A, B, C through O.
template <class Point>
CevianConfig<Point> cevians_through(const Point& A, const Point& B, const Point& C, const Point& O) {
  CevianConfig<Point> k{A, B, C, A, B, C};
  const std::array<std::array<const Point*, 3>, 3> s{{{&A, &B, &C}, {&B, &C, &A}, {&C, &A, &B}}};
  std::array<Point*, 3> feet{&k.a, &k.b, &k.c};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto f = detail::meet(*s[i][0], O, *s[i][1], *s[i][2], detail::halfway(*s[i][1], *s[i][2]));
    if (!f) fail(ErrorCode::InvalidConfig, "cevian through O is parallel to the opposite side");
    *feet[i] = *f;
  }
  return k;
}

/// |AO/Oa * BO/Ob * CO/Oc - (AO/Oa + BO/Ob + CO/Oc + 2)|
inline double euler_relation_residual_euclidean(const PlanarCevians& k, double tol = kTolerance) {
  detail::validate(k, tol);
  return std::abs(detail::product_minus_sum(detail::ratios(k)));
}

/// The same relation with every length replaced by the tangent of the arc.
inline double euler_relation_residual_spherical(const SphericalCevians& k, double tol = kTolerance) {
  detail::validate(k, tol);
  return std::abs(detail::product_minus_sum(detail::ratios(k)));
}

/// |Oa/Aa + Ob/Bb + Oc/Cc - 1|
inline double euler_identity_residual_euclidean(const PlanarCevians& k, double tol = kTolerance) {
  detail::validate(k, tol);
  double sum = 0.0;
  for (const auto& cut : detail::cuts(k)) sum += (cut.to_foot - cut.to_point) / cut.to_foot;
  return std::abs(sum - 1.0);
}

/// Candidate spherical counterparts of the identity Oa/Aa + Ob/Bb + Oc/Cc = 1.
/// With r_X = tan XO / tan Ox:
struct SphericalIdentityReport {
  double printed_sum = 0;           ///< sum r_X, tested against 1
  double printed_residual = 0;
  double inverse_sum = 0;           ///< sum 1/r_X, tested against 1
  double inverse_residual = 0;
  double foot_ratio_sum = 0;        ///< sum tan Ox / tan Xx, tested against 1
  double foot_ratio_residual = 0;
  double product_form_residual = 0; ///< |sum r_X - (prod r_X - 2)|
  double weight_sum = 0;            ///< sum 1/(1 + r_X), tested against 1
  double weight_residual = 0;
  bool printed_holds = false;       ///< printed_residual within tolerance
};

inline SphericalIdentityReport spherical_identity_probe(const SphericalCevians& k, double tol = kTolerance) {
  detail::validate(k, tol);
  const auto cs = detail::cuts(k);
  const auto r = detail::ratios(k);
  SphericalIdentityReport rep;
  for (std::size_t i = 0; i < 3; ++i) {
    rep.printed_sum += r[i];
    rep.inverse_sum += 1.0 / r[i];
    rep.foot_ratio_sum += std::tan(cs[i].to_foot - cs[i].to_point) / std::tan(cs[i].to_foot);
    rep.weight_sum += 1.0 / (1.0 + r[i]);
  }
  rep.printed_residual = std::abs(rep.printed_sum - 1.0);
  rep.inverse_residual = std::abs(rep.inverse_sum - 1.0);
  rep.foot_ratio_residual = std::abs(rep.foot_ratio_sum - 1.0);
  rep.product_form_residual = std::abs(detail::product_minus_sum(r));
  rep.weight_residual = std::abs(rep.weight_sum - 1.0);
  rep.printed_holds = rep.printed_residual <= tol;
  return rep;
}

/// |(Ac/cB)(Ba/aC)(Cb/bA) - 1| with directed segments; sines of arcs on the sphere.
template <class Point>
double ceva_residual(const CevianConfig<Point>& k, double tol = kTolerance) {
  detail::validate(k, tol);
  auto ratio = [](const Point& P, const Point& Q, const Point& x) {
    const double px = detail::position(P, Q, x);
    const double xq = detail::position(P, Q, Q) - px;
    if constexpr (detail::kSpherical<Point>) {
      return std::sin(px) / std::sin(xq);
    } else {
      return px / xq;
    }
  };
  return std::abs(ratio(k.A, k.B, k.c) * ratio(k.B, k.C, k.a) * ratio(k.C, k.A, k.b) - 1.0);
}

/// Segment lengths along three cevians meeting at O.
struct CevianLengths {
  double AO = 0, Oa = 0, BO = 0, Ob = 0, CO = 0, Oc = 0;
};

struct PlanarCevianTriangle {
  PlanarCevians config;
  Vec2 O;
  double angle_AOB = 0;  ///< angle between the rays OA and OB
  double angle_BOC = 0;
  double angle_COA = 0;
};

/// Triangle whose cevians through O have the given lengths. The rays from O
/// are fixed by the data: with k_X = XO Ox / (XO + Ox) the vectors k_X u_X
/// must close, which fixes the angles at O. Supplied angles are checked
/// against them.
inline PlanarCevianTriangle construct_from_cevians(const CevianLengths& L,
                                                   std::optional<std::array<double, 3>> angles = std::nullopt,
                                                   double tol = kTolerance) {
  for (double v : {L.AO, L.Oa, L.BO, L.Ob, L.CO, L.Oc}) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorCode::OutOfRange, "cevian segment lengths must be positive");
  }
  const std::array<double, 3> r{L.AO / L.Oa, L.BO / L.Ob, L.CO / L.Oc};
  const double rel = detail::product_minus_sum(r);
  if (std::abs(rel) > tol * std::max(1.0, r[0] * r[1] * r[2])) {
    fail(ErrorCode::RelationViolated, "lengths do not satisfy AO/Oa BO/Ob CO/Oc = AO/Oa + BO/Ob + CO/Oc + 2");
  }
  const double kA = L.AO * L.Oa / (L.AO + L.Oa);
  const double kB = L.BO * L.Ob / (L.BO + L.Ob);
  const double kC = L.CO * L.Oc / (L.CO + L.Oc);
  auto opposite = [](double x, double y, double z) {
    // Angle between vectors of lengths x and y whose sum has length z.
    return std::acos(clamp_unit((z * z - x * x - y * y) / (2.0 * x * y)));
  };
  const double ab = opposite(kA, kB, kC), bc = opposite(kB, kC, kA), ca = opposite(kC, kA, kB);
  if (std::abs(ab + bc + ca - kTwoPi) > 1e-9) fail(ErrorCode::NoConstruction, "segments cannot balance around O");
  if (angles) {
    const auto& g = *angles;
    if (std::abs(g[0] - ab) > tol || std::abs(g[1] - bc) > tol || std::abs(g[2] - ca) > tol) {
      fail(ErrorCode::RelationViolated, "angles at O are incompatible with the segment lengths");
    }
  }
  const Vec2 uA(1.0, 0.0), uB(std::cos(ab), std::sin(ab)), uC(std::cos(ca), -std::sin(ca));
  PlanarCevianTriangle t;
  t.O = Vec2::Zero();
  t.config.A = L.AO * uA;
  t.config.B = L.BO * uB;
  t.config.C = L.CO * uC;
  t.config.a = -L.Oa * uA;
  t.config.b = -L.Ob * uB;
  t.config.c = -L.Oc * uC;
  t.angle_AOB = ab;
  t.angle_BOC = bc;
  t.angle_COA = ca;
  return t;
}

}  // namespace sphgeom

#endif  // SPHGEOM_CEVIANS_HPP
