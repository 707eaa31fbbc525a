#ifndef SPHGEOM_EXTREMAL_HPP
#define SPHGEOM_EXTREMAL_HPP

// Triangles with a fixed base AB whose third vertex V runs along a great
// circle: the vertex maximizing the angle at V, minimizing AV + VB, or
// maximizing the area. Also spherical ellipses (constant AV + VB) and the
// quadric cone through the sphere's center that carries them.

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "sphgeom/area.hpp"
#include "sphgeom/core.hpp"
#include "sphgeom/detail/optimize.hpp"

namespace sphgeom {

struct FussInstance {
  SPoint A, B;
  GreatCircle constraint{SPoint(0, 0, 1)};
};

enum class FussObjective { MaxAngle, MinSideSum, MaxArea };

constexpr std::string_view name(FussObjective o) {
  switch (o) {
    case FussObjective::MaxAngle: return "max_angle";
    case FussObjective::MinSideSum: return "min_side_sum";
    case FussObjective::MaxArea: return "max_area";
  }
  return "?";
}

struct FussCritical {
  enum class Kind { Maximum, Minimum };
  SPoint vertex;
  double t = 0;      ///< parameter on the constraint circle
  double value = 0;  ///< objective value (angle, side sum or area)
  Kind kind = Kind::Maximum;
};

struct FussResult {
  FussObjective objective = FussObjective::MaxAngle;
  std::vector<FussCritical> critical;  ///< ordered by parameter
  FussCritical optimum;
  /// The best value is approached where V meets the base's great circle,
  /// i.e. the optimum is a supremum of degenerate triangles, not attained.
  bool optimum_at_boundary = false;
};

/// Grid resolution of the coarse scan in fuss_solve.
inline constexpr int kFussGrid = 4096;

inline double fuss_objective(const FussInstance& in, FussObjective obj, const SPoint& V) {
  switch (obj) {
    case FussObjective::MaxAngle: return interior_angle(V, in.A, in.B);
    case FussObjective::MinSideSum: return dist(V, in.A) + dist(V, in.B);
    case FussObjective::MaxArea: {
      const double e = area_formula::excess(interior_angle(in.A, in.B, V), interior_angle(in.B, V, in.A),
                                            interior_angle(V, in.A, in.B));
      return orientation(in.A, in.B, V) >= 0 ? e : -e;
    }
  }
  return 0.0;
}

namespace detail {

inline double great_circle_param(const GreatCircle& g, const SPoint& p) {
  auto [e1, e2] = orthonormal_basis(g.pole().vec());
  return std::atan2(p.vec().dot(e2), p.vec().dot(e1));
}

}  // namespace detail

/// All local extrema of the objective along the constraint circle, the
/// global optimum among them, and whether that optimum sits at a boundary.
///
/// The angle and area objectives run over the half of the circle on the
/// positive side of A -> B (the angle at V equals the angle at -V, and only
/// positively oriented triangles compete for area). The side sum runs over
/// the whole circle.
inline FussResult fuss_solve(const FussInstance& in, FussObjective obj, int grid = kFussGrid) {
  const double ab = dist(in.A, in.B);
  if (!(ab > 1e-12 && ab < kPi - 1e-12)) fail(ErrorCode::DegenerateBase, "base endpoints must be distinct and not antipodal");
  const GreatCircle& g = in.constraint;
  if (g.contains(in.A, 1e-12) && g.contains(in.B, 1e-12)) {
    fail(ErrorCode::DegenerateInstance, "base lies on the constraint circle");
  }
  const GreatCircle base = great_circle_through(in.A, in.B);

  // Parameter interval: the open half circle on the positive side, or the full circle.
  double lo = -kPi, span = kTwoPi;
  const bool half = obj != FussObjective::MinSideSum;
  if (half) {
    auto [X, Y] = intersect(g, base);
    lo = detail::great_circle_param(g, X);
    if (orientation(in.A, in.B, g.point_at(lo + kHalfPi)) < 0) lo = detail::great_circle_param(g, Y);
    span = kPi;
  }
  const double sense = obj == FussObjective::MinSideSum ? -1.0 : 1.0;  // maximize sense * f
  auto score = [&](double t) { return sense * fuss_objective(in, obj, g.point_at(t)); };

  const std::size_t n = static_cast<std::size_t>(grid);
  std::vector<double> ts(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = lo + span * (static_cast<double>(i) + 0.5) / grid;
    fs[i] = score(ts[i]);
  }

  FussResult res;
  res.objective = obj;
  auto neighbor = [&](std::size_t i, int d) -> std::size_t {
    if (d < 0) return i == 0 ? n - 1 : i - 1;
    return i + 1 == n ? 0 : i + 1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (half && (i == 0 || i + 1 == n)) continue;
    const std::size_t l = neighbor(i, -1), r = neighbor(i, +1);
    const bool is_max = fs[i] > fs[l] && fs[i] >= fs[r];
    const bool is_min = fs[i] < fs[l] && fs[i] <= fs[r];
    if (!is_max && !is_min) continue;
    const double a = ts[i] - span / grid, b = ts[i] + span / grid;
    const double flip = is_max ? 1.0 : -1.0;
    const auto [t, v] = detail::golden_max([&](double x) { return flip * score(x); }, a, b, 1e-13);
    FussCritical c;
    c.t = wrap_angle(t);
    c.vertex = g.point_at(t);
    c.value = fuss_objective(in, obj, c.vertex);
    c.kind = is_max ? FussCritical::Kind::Maximum : FussCritical::Kind::Minimum;
    if (sense < 0) c.kind = is_max ? FussCritical::Kind::Minimum : FussCritical::Kind::Maximum;
    res.critical.push_back(c);
  }
  std::sort(res.critical.begin(), res.critical.end(), [](const auto& x, const auto& y) { return x.t < y.t; });

  // Global optimum: best interior extremum, unless the scan's best lies at an end of the half circle.
  const auto best_idx = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
  const bool at_end = half && (best_idx == 0 || best_idx + 1 == n);
  const FussCritical::Kind want = sense > 0 ? FussCritical::Kind::Maximum : FussCritical::Kind::Minimum;
  bool have = false;
  for (const auto& c : res.critical) {
    if (c.kind != want) continue;
    if (!have || sense * c.value > sense * res.optimum.value) res.optimum = c;
    have = true;
  }
  if (at_end || !have) {
    res.optimum_at_boundary = true;
    res.optimum.t = wrap_angle(ts[best_idx]);
    res.optimum.vertex = g.point_at(ts[best_idx]);
    res.optimum.value = fuss_objective(in, obj, res.optimum.vertex);
    res.optimum.kind = want;
  }
  return res;
}

/// Locus of points whose distances to f1 and f2 sum to `sum`.
struct SphericalEllipse {
  SPoint f1, f2;
  double sum = 0;  ///< 2s

  static SphericalEllipse make(const SPoint& f1, const SPoint& f2, double sum) {
    const double d = dist(f1, f2);
    if (!(d > 1e-12 && d < kPi - 1e-12)) fail(ErrorCode::DegenerateFoci, "foci must be distinct and not antipodal");
    if (!(sum > d && sum < kTwoPi - d)) fail(ErrorCode::EmptyLocus, "distance sum must lie strictly between d and 2 pi - d");
    return {f1, f2, sum};
  }
};

inline double ellipse_residual(const SphericalEllipse& e, const SPoint& p) { return dist(p, e.f1) + dist(p, e.f2) - e.sum; }

/// n points of the ellipse, one on each of n equally spaced rays from the
/// focal midpoint (the first ray at angle `phase` from the direction of f2).
inline std::vector<SPoint> ellipse_trace(const SphericalEllipse& e, int n, double phase = 0.0) {
  if (n < 6) fail(ErrorCode::OutOfRange, "at least 6 points are required");
  const SphericalEllipse chk = SphericalEllipse::make(e.f1, e.f2, e.sum);
  const SPoint c = midpoint(chk.f1, chk.f2);
  const Vec3 u = tangent_toward(c, chk.f2);
  const Vec3 w = c.vec().cross(u);
  std::vector<SPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double th = phase + kTwoPi * k / n;
    const Vec3 dir = std::cos(th) * u + std::sin(th) * w;
    // The residual is negative at the midpoint and positive at its antipode.
    auto f = [&](double r) { return ellipse_residual(chk, travel(c, dir, r)); };
    const double r = detail::bisect(f, 0.0, kPi, 1e-16, 120);
    out.push_back(travel(c, dir, r));
  }
  return out;
}

/// The locus for sum = pi: the great circle of points equidistant from f2 and
/// the antipode of f1, whose pole is along f1 + f2.
inline GreatCircle ellipse_degenerate(const SPoint& f1, const SPoint& f2) {
  const double d = dist(f1, f2);
  if (!(d > 1e-12 && d < kPi - 1e-12)) fail(ErrorCode::DegenerateFoci, "foci must be distinct and not antipodal");
  return GreatCircle(SPoint(f1.vec() + f2.vec()));
}

struct ConeFit {
  Mat3 Q = Mat3::Zero();  ///< symmetric, unit Frobenius norm
  double residual = 0;    ///< max |p^T Q p| over fresh ellipse points
  bool planar = false;    ///< the points lie on a great circle: Q = n n^T
};

/// Symmetric quadratic form vanishing on the given unit vectors, by the
/// smallest singular direction of [x^2, y^2, z^2, 2xy, 2xz, 2yz]. When the
/// points lie on a great circle the null space is three-dimensional and the
/// plane form n n^T is returned.
inline ConeFit fit_cone(const std::vector<SPoint>& pts) {
  if (pts.size() < 9) fail(ErrorCode::OutOfRange, "at least 9 points are required");
  Eigen::MatrixXd D(static_cast<Eigen::Index>(pts.size()), 6);
  Eigen::MatrixXd P(static_cast<Eigen::Index>(pts.size()), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i].x(), y = pts[i].y(), z = pts[i].z();
    const auto r = static_cast<Eigen::Index>(i);
    D.row(r) << x * x, y * y, z * z, 2 * x * y, 2 * x * z, 2 * y * z;
    P.row(r) << x, y, z;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  ConeFit fit;
  if (s(3) < 1e-9 * s(0)) {
    Eigen::JacobiSVD<Eigen::MatrixXd> plane(P, Eigen::ComputeFullV);
    const Vec3 nrm = plane.matrixV().col(2).normalized();
    fit.Q = nrm * nrm.transpose();
    fit.planar = true;
  } else {
    const Eigen::VectorXd q = svd.matrixV().col(5);
    fit.Q << q(0), q(3), q(4), q(3), q(1), q(5), q(4), q(5), q(2);
  }
  fit.Q /= fit.Q.norm();
  return fit;
}

/// Fits the cone to 24 traced points and evaluates it on 100 others.
inline ConeFit ellipse_cone_check(const SphericalEllipse& e) {
  ConeFit fit = fit_cone(ellipse_trace(e, 24));
  for (const SPoint& p : ellipse_trace(e, 100, 0.0123)) {
    fit.residual = std::max(fit.residual, std::abs(p.vec().dot(fit.Q * p.vec())));
  }
  return fit;
}

}  // namespace sphgeom

#endif  // SPHGEOM_EXTREMAL_HPP
