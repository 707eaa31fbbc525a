#ifndef SPHGEOM_PLANAR_HPP
#define SPHGEOM_PLANAR_HPP

// Euclidean counterparts used next to the spherical constructions.

#include <cmath>

#include "sphgeom/core.hpp"

namespace sphgeom {

struct PlanarCircle {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;

  Vec2 point_at(double t) const { return center + radius * Vec2(std::cos(t), std::sin(t)); }
  double param_of(const Vec2& p) const { return std::atan2(p.y() - center.y(), p.x() - center.x()); }
  double distance_from(const Vec2& p) const { return std::abs((p - center).norm() - radius); }
  bool contains(const Vec2& p, double tol = kTolerance) const { return distance_from(p) <= tol * std::max(1.0, radius); }
};

/// Distance from x to the line through p and q.
inline double line_distance(const Vec2& p, const Vec2& q, const Vec2& x) {
  const Vec2 d = (q - p).normalized();
  return std::abs(d.x() * (x - p).y() - d.y() * (x - p).x());
}

}  // namespace sphgeom

#endif  // SPHGEOM_PLANAR_HPP
