#ifndef SPHGEOM_CORE_HPP
#define SPHGEOM_CORE_HPP

// Spherical primitives on the unit sphere: points, great and small circles,
// arcs, distances and intersections. All angles are radians.

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sphgeom/error.hpp"

namespace sphgeom {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;
inline constexpr double kTwoPi = 2 * std::numbers::pi;

/// Default absolute tolerance on angles and residuals.
inline constexpr double kTolerance = 1e-9;

inline double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

/// A point on the unit sphere, stored as a unit 3-vector.
class SPoint {
 public:
  SPoint() : v_(1.0, 0.0, 0.0) {}
  SPoint(double x, double y, double z) : SPoint(Vec3(x, y, z)) {}

  /// Renormalizes; rejects zero and non-finite vectors.
  explicit SPoint(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 1e-300) || !std::isfinite(n)) {
      fail(ErrorCode::DegenerateInput, "cannot normalize a zero or non-finite vector");
    }
    v_ = v / n;
  }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const SPoint& o) const { return v_.dot(o.v_); }

  SPoint operator-() const { return SPoint(-v_, kNormalized); }

 private:
  struct Normalized {};
  static constexpr Normalized kNormalized{};
  SPoint(const Vec3& v, Normalized) : v_(v) {}

  Vec3 v_;
};

/// Latitude/longitude pair. lat in [-pi/2, pi/2], lon in (-pi, pi].
struct GeoCoord {
  double lat = 0.0;
  double lon = 0.0;

  static GeoCoord make(double lat, double lon) {
    if (!std::isfinite(lat) || !std::isfinite(lon) || lat < -kHalfPi - 1e-15 || lat > kHalfPi + 1e-15) {
      fail(ErrorCode::OutOfRange, "latitude must lie in [-pi/2, pi/2]");
    }
    lat = std::clamp(lat, -kHalfPi, kHalfPi);
    lon = wrap_angle(lon);
    if (std::abs(std::abs(lat) - kHalfPi) < 1e-15) lon = 0.0;
    return {lat, lon};
  }
};

inline SPoint from_geo(const GeoCoord& g) {
  const double c = std::cos(g.lat);
  return SPoint(c * std::cos(g.lon), c * std::sin(g.lon), std::sin(g.lat));
}

inline GeoCoord to_geo(const SPoint& p) {
  const double h = std::hypot(p.x(), p.y());
  const double lat = std::atan2(p.z(), h);
  const double lon = h == 0.0 ? 0.0 : std::atan2(p.y(), p.x());
  return GeoCoord::make(lat, lon);
}

/// Angular distance in [0, pi].
inline double dist(const SPoint& p, const SPoint& q) {
  return std::atan2(p.vec().cross(q.vec()).norm(), p.dot(q));
}

inline SPoint antipode(const SPoint& p) { return -p; }

/// Unit tangent at `from` pointing along the minor arc toward `to`.
inline Vec3 tangent_toward(const SPoint& from, const SPoint& to) {
  Vec3 t = to.vec() - from.dot(to) * from.vec();
  const double n = t.norm();
  if (n < 1e-14) fail(ErrorCode::DegenerateInput, "tangent direction undefined for equal or antipodal points");
  return t / n;
}

/// Point reached from p by travelling `angle` along unit tangent t.
inline SPoint travel(const SPoint& p, const Vec3& t, double angle) {
  return SPoint(std::cos(angle) * p.vec() + std::sin(angle) * t);
}

/// Right-handed rotation of p about `axis` by `angle`.
inline SPoint rotate(const SPoint& p, const Vec3& axis, double angle) {
  return SPoint(Eigen::AngleAxisd(angle, axis.normalized()) * p.vec());
}

/// Orthonormal pair spanning the plane perpendicular to n, with e1 x e2 = n.
inline std::pair<Vec3, Vec3> orthonormal_basis(const Vec3& n) {
  const Vec3 seed = std::abs(n.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitY();
  Vec3 e1 = seed.cross(n).normalized();
  Vec3 e2 = n.cross(e1);
  return {e1, e2};
}

/// Local east/north unit tangents at p (a fixed fallback frame at the poles).
inline std::pair<Vec3, Vec3> east_north(const SPoint& p) {
  Vec3 east = Vec3::UnitZ().cross(p.vec());
  if (east.norm() < 1e-12) east = Vec3::UnitY();
  east.normalize();
  Vec3 north = p.vec().cross(east);
  return {east, north};
}

/// Great circle identified by its unit pole. The pole sign is canonical
/// (lexicographically larger of +n and -n) so equal circles compare equal.
class GreatCircle {
 public:
  explicit GreatCircle(const SPoint& pole) : pole_(canonical(pole)) {}

  const SPoint& pole() const { return pole_; }

  /// Angular distance from p to the circle.
  double distance_from(const SPoint& p) const { return std::asin(std::min(1.0, std::abs(p.dot(pole_)))); }
  bool contains(const SPoint& p, double tol = kTolerance) const { return distance_from(p) <= tol; }

  bool same_as(const GreatCircle& o, double tol = kTolerance) const { return dist(pole_, o.pole_) <= tol; }

  /// Point at parameter t in the circle's canonical basis.
  SPoint point_at(double t) const {
    auto [e1, e2] = orthonormal_basis(pole_.vec());
    return SPoint(std::cos(t) * e1 + std::sin(t) * e2);
  }

 private:
  static SPoint canonical(const SPoint& p) {
    const Vec3& v = p.vec();
    for (int i = 0; i < 3; ++i) {
      if (v[i] > 1e-15) return p;
      if (v[i] < -1e-15) return -p;
    }
    return p;
  }

  SPoint pole_;
};

/// Circle of points at angular distance `radius` from `pole`.
struct SmallCircle {
  SPoint pole;
  double radius = kHalfPi;

  static SmallCircle make(const SPoint& pole, double radius) {
    if (!(radius > 0.0 && radius < kPi)) fail(ErrorCode::InvalidDistance, "small-circle radius must lie in (0, pi)");
    return SmallCircle{pole, radius};
  }

  /// Same point set with radius <= pi/2.
  SmallCircle canonical() const { return radius <= kHalfPi ? *this : SmallCircle{-pole, kPi - radius}; }

  double distance_from(const SPoint& p) const { return std::abs(dist(pole, p) - radius); }
  bool contains(const SPoint& p, double tol = kTolerance) const { return distance_from(p) <= tol; }

  bool same_as(const SmallCircle& o, double tol = kTolerance) const {
    const SmallCircle a = canonical();
    const SmallCircle b = o.canonical();
    return dist(a.pole, b.pole) <= tol && std::abs(a.radius - b.radius) <= tol;
  }

  SPoint point_at(double t) const {
    auto [e1, e2] = orthonormal_basis(pole.vec());
    return SPoint(std::cos(radius) * pole.vec() + std::sin(radius) * (std::cos(t) * e1 + std::sin(t) * e2));
  }

  /// Inverse of point_at for points on (or near) the circle.
  double param_of(const SPoint& p) const {
    auto [e1, e2] = orthonormal_basis(pole.vec());
    return std::atan2(p.vec().dot(e2), p.vec().dot(e1));
  }
};

/// Minor great-circle arc between two non-antipodal points.
struct Arc {
  SPoint a;
  SPoint b;

  static Arc make(const SPoint& a, const SPoint& b) {
    const double d = dist(a, b);
    if (d < 1e-14 || d > kPi - 1e-12) fail(ErrorCode::DegenerateInput, "arc endpoints must be distinct and not antipodal");
    return Arc{a, b};
  }

  double length() const { return dist(a, b); }

  /// Point at fraction f in [0, 1] along the arc.
  SPoint point_at(double f) const { return travel(a, tangent_toward(a, b), f * length()); }
};

inline GreatCircle great_circle_through(const SPoint& p, const SPoint& q) {
  const Vec3 n = p.vec().cross(q.vec());
  if (n.norm() < 1e-14) fail(ErrorCode::DegenerateInput, "no unique great circle through equal or antipodal points");
  return GreatCircle(SPoint(n));
}

/// The antipodal pair common to two distinct great circles.
inline std::pair<SPoint, SPoint> intersect(const GreatCircle& g1, const GreatCircle& g2) {
  const Vec3 n = g1.pole().vec().cross(g2.pole().vec());
  if (n.norm() < 1e-14) fail(ErrorCode::CoincidentCircles, "great circles coincide");
  const SPoint p(n);
  return {p, -p};
}

inline SPoint midpoint(const SPoint& p, const SPoint& q) {
  const Vec3 s = p.vec() + q.vec();
  if (s.norm() < 1e-14) fail(ErrorCode::DegenerateInput, "midpoint of antipodal points is undefined");
  return SPoint(s);
}

/// Great circle through p (on g) crossing g at a right angle.
inline GreatCircle perpendicular_at(const GreatCircle& g, const SPoint& p, double tol = kTolerance) {
  if (!g.contains(p, tol)) fail(ErrorCode::PointNotOnCircle, "point is not on the great circle");
  return GreatCircle(SPoint(g.pole().vec().cross(p.vec())));
}

/// The two small circles at distance d on either side of g.
inline std::pair<SmallCircle, SmallCircle> equidistant_circles(const GreatCircle& g, double d) {
  if (!(d > 0.0 && d < kHalfPi)) fail(ErrorCode::InvalidDistance, "distance must lie in (0, pi/2)");
  return {SmallCircle{g.pole(), kHalfPi - d}, SmallCircle{-g.pole(), kHalfPi - d}};
}

/// Angle in [0, pi] at `vertex` between the arcs toward p and toward q.
inline double interior_angle(const SPoint& vertex, const SPoint& p, const SPoint& q) {
  const Vec3 n1 = vertex.vec().cross(p.vec());
  const Vec3 n2 = vertex.vec().cross(q.vec());
  if (n1.norm() < 1e-14 || n2.norm() < 1e-14) {
    fail(ErrorCode::DegenerateInput, "angle undefined when a side point coincides with the vertex or its antipode");
  }
  return std::atan2(n1.cross(n2).norm(), n1.dot(n2));
}

/// Signed volume p . (q x r); positive when p, q, r run counter-clockwise.
inline double orientation(const SPoint& p, const SPoint& q, const SPoint& r) {
  return p.vec().dot(q.vec().cross(r.vec()));
}

}  // namespace sphgeom

#endif  // SPHGEOM_CORE_HPP
