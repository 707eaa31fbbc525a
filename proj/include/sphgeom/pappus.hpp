#ifndef SPHGEOM_PAPPUS_HPP
#define SPHGEOM_PAPPUS_HPP

// Triangles inscribed in a circle whose three side lines pass through three
// given points, in the plane and on the sphere.
//
// Projecting the circle onto itself from a target is an involution of the
// circle. Going round the triangle applies three of them; the triangles are
// the fixed points of that composition, found by scanning the displacement
// on a grid and bisecting each sign change.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <type_traits>
#include <vector>

#include "sphgeom/core.hpp"
#include "sphgeom/detail/optimize.hpp"
#include "sphgeom/planar.hpp"

namespace sphgeom {

template <class Circle>
struct PappusTraits;

template <>
struct PappusTraits<PlanarCircle> {
  using Point = Vec2;
  static double separation(const Vec2& p, const Vec2& q) { return (p - q).norm(); }
  static double on_circle(const PlanarCircle& c, const Vec2& p) { return c.distance_from(p); }
  static double clearance(const PlanarCircle& c, const Vec2& p) { return c.distance_from(p); }
  static double off_line(const Vec2& p, const Vec2& q, const Vec2& x) { return line_distance(p, q, x); }
};

template <>
struct PappusTraits<SmallCircle> {
  using Point = SPoint;
  static double separation(const SPoint& p, const SPoint& q) { return dist(p, q); }
  static double on_circle(const SmallCircle& c, const SPoint& p) { return c.distance_from(p); }
  /// A great circle through a target also passes through its antipode.
  static double clearance(const SmallCircle& c, const SPoint& p) { return std::min(c.distance_from(p), c.distance_from(-p)); }
  static double off_line(const SPoint& p, const SPoint& q, const SPoint& x) {
    return great_circle_through(p, q).distance_from(x);
  }
};

template <class Circle>
struct PappusInstance {
  using Point = typename PappusTraits<Circle>::Point;
  Circle circle;
  std::array<Point, 3> targets;
};

using PlanarPappus = PappusInstance<PlanarCircle>;
using SphericalPappus = PappusInstance<SmallCircle>;

/// Side i (from vertex i to vertex i+1) passes through targets[order[i]].
template <class Point>
struct PappusSolution {
  std::array<Point, 3> vertices;
  std::array<int, 3> order{0, 1, 2};
  double parameter = 0;         ///< circle parameter of the first vertex
  double circle_residual = 0;   ///< max distance of a vertex from the circle
  double incidence_residual = 0;  ///< max distance of a target from its side line
};

/// Second intersection of the line through v and target with the circle.
inline Vec2 chord_through(const PlanarCircle& c, const Vec2& v, const Vec2& target) {
  const Vec2 d = target - v;
  const double n = d.norm();
  if (n < 1e-12 * std::max(1.0, c.radius)) fail(ErrorCode::TargetOnCircleAtV, "target coincides with the vertex");
  const Vec2 u = d / n;
  return v - 2.0 * (v - c.center).dot(u) * u;
}

/// Second intersection of the great circle through v and target with the small circle.
inline SPoint chord_through(const SmallCircle& c, const SPoint& v, const SPoint& target) {
  const Vec3 w = v.vec().cross(target.vec());
  if (w.norm() < 1e-12) fail(ErrorCode::TargetOnCircleAtV, "target coincides with the vertex or its antipode");
  const Vec3 axis = w.normalized();
  const Vec3 side = axis.cross(v.vec());
  // Along cos(th) v + sin(th) side the height over the pole is constant for th = 0
  // and th = 2 atan2(side . n, cos r).
  const double th = 2.0 * std::atan2(side.dot(c.pole.vec()), std::cos(c.radius));
  return SPoint(std::cos(th) * v.vec() + std::sin(th) * side);
}

namespace detail {

template <class Circle>
void check_pappus(const PappusInstance<Circle>& inst) {
  using T = PappusTraits<Circle>;
  for (std::size_t i = 0; i < 3; ++i) {
    if (T::clearance(inst.circle, inst.targets[i]) < 1e-9) fail(ErrorCode::TangentTarget, "target lies on the circle");
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (T::separation(inst.targets[i], inst.targets[j]) < 1e-12) fail(ErrorCode::InvalidConfig, "targets must be distinct");
    }
  }
}

template <class Circle>
std::array<typename PappusTraits<Circle>::Point, 3> walk(const PappusInstance<Circle>& inst, double t,
                                                         const std::array<int, 3>& order) {
  const auto v0 = inst.circle.point_at(t);
  const auto v1 = chord_through(inst.circle, v0, inst.targets[order[0]]);
  const auto v2 = chord_through(inst.circle, v1, inst.targets[order[1]]);
  return {v0, v1, v2};
}

template <class Circle>
double displacement(const PappusInstance<Circle>& inst, double t, const std::array<int, 3>& order) {
  const auto v = walk(inst, t, order);
  const auto back = chord_through(inst.circle, v[2], inst.targets[order[2]]);
  return wrap_angle(inst.circle.param_of(back) - t);
}

template <class Point>
double vertex_set_distance(const std::array<Point, 3>& a, const std::array<Point, 3>& b, double (*sep)(const Point&, const Point&)) {
  std::array<int, 3> p{0, 1, 2};
  double best = 1e300;
  do {
    double worst = 0;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, sep(a[i], b[static_cast<std::size_t>(p[i])]));
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace detail

/// Grid resolution of the fixed-point scan.
inline constexpr int kPappusGrid = 2048;

template <class Circle>
std::vector<PappusSolution<typename PappusTraits<Circle>::Point>> solve_pappus(const PappusInstance<Circle>& inst,
                                                                              int grid = kPappusGrid) {
  using T = PappusTraits<Circle>;
  using Point = typename T::Point;
  detail::check_pappus(inst);
  std::vector<PappusSolution<Point>> out;
  double closest = kPi;
  for (const std::array<int, 3>& order : {std::array<int, 3>{0, 1, 2}, std::array<int, 3>{0, 2, 1}}) {
    auto g = [&](double t) { return detail::displacement(inst, t, order); };
    auto accept = [&](double t) {
      const auto v = detail::walk(inst, t, order);
      PappusSolution<Point> s;
      s.vertices = v;
      s.order = order;
      s.parameter = wrap_angle(t);
      const bool proper = T::separation(v[0], v[1]) > 1e-6 && T::separation(v[1], v[2]) > 1e-6 &&
                          T::separation(v[2], v[0]) > 1e-6;
      if (!proper) return;
      for (std::size_t k = 0; k < 3; ++k) {
        s.circle_residual = std::max(s.circle_residual, T::on_circle(inst.circle, v[k]));
        const double r = T::off_line(v[k], v[(k + 1) % 3], inst.targets[static_cast<std::size_t>(order[k])]);
        s.incidence_residual = std::max(s.incidence_residual, r);
      }
      const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& o) {
        return detail::vertex_set_distance<Point>(o.vertices, s.vertices, &T::separation) < 1e-6;
      });
      if (!dup && s.incidence_residual < 1e-6) out.push_back(s);
    };
    // A jump of nearly 2 pi is the wrap of the displacement, not a root.
    auto crosses = [](double a, double b) { return (a <= 0) != (b <= 0) && std::abs(b - a) < kPi; };

    std::vector<double> ts(static_cast<std::size_t>(grid) + 1), gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      ts[i] = -kPi + kTwoPi * static_cast<double>(i) / grid;
      gs[i] = g(ts[i]);
      closest = std::min(closest, std::abs(gs[i]));
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (crosses(gs[i - 1], gs[i])) accept(detail::bisect(g, ts[i - 1], ts[i], 1e-12));
    }
    // Two roots inside one cell, or a tangential root, leave only a dip of |g| toward zero.
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
      const double a = gs[i - 1], b = gs[i], c = gs[i + 1];
      if (crosses(a, b) || crosses(b, c) || !(std::abs(b) < std::abs(a) && std::abs(b) <= std::abs(c))) continue;
      if (std::abs(b) > 1e-2) continue;
      const double sign = b < 0 ? -1.0 : 1.0;
      const auto [tm, gm] = detail::golden_max([&](double t) { return -sign * g(t); }, ts[i - 1], ts[i + 1], 1e-14);
      if (-gm <= 0) {
        accept(detail::bisect(g, ts[i - 1], tm, 1e-13));
        accept(detail::bisect(g, tm, ts[i + 1], 1e-13));
      } else if (-gm < 1e-14) {
        accept(tm);
      }
    }
  }
  if (out.empty()) {
    char buf[112];
    std::snprintf(buf, sizeof buf, "no inscribed triangle found (minimum fixed-point residual %.3e)", closest);
    fail(ErrorCode::NoSolution, buf);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.parameter < b.parameter; });
  return out;
}

}  // namespace sphgeom

#endif  // SPHGEOM_PAPPUS_HPP
