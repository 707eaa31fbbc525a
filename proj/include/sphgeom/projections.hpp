#ifndef SPHGEOM_PROJECTIONS_HPP
#define SPHGEOM_PROJECTIONS_HPP

// Sphere-to-plane maps and numerical measures of their distortion.
//
//   stereographic            from pole P onto the plane through the center normal to P
//   gnomonic                 from the center onto the plane tangent at T
//   mercator                 u = lon, v = asinh(tan lat)
//   lambert azimuthal        equal-area, centered at T
//   lambert cylindrical      equal-area, u = lon, v = sin lat
//
// Distortion measures use the Jacobian of the map in the local east/north
// frame, by central differences with step 1e-6.

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "sphgeom/core.hpp"
#include "sphgeom/geodesics.hpp"
#include "sphgeom/lexell.hpp"
#include "sphgeom/planar.hpp"

namespace sphgeom {

enum class ProjectionKind { Stereographic, Gnomonic, Mercator, LambertAzimuthal, LambertCylindrical };

constexpr std::string_view name(ProjectionKind k) {
  switch (k) {
    case ProjectionKind::Stereographic: return "stereographic";
    case ProjectionKind::Gnomonic: return "gnomonic";
    case ProjectionKind::Mercator: return "mercator";
    case ProjectionKind::LambertAzimuthal: return "lambert_azimuthal_equal_area";
    case ProjectionKind::LambertCylindrical: return "lambert_cylindrical_equal_area";
  }
  return "?";
}

inline std::optional<ProjectionKind> parse_projection_kind(std::string_view s) {
  for (auto k : {ProjectionKind::Stereographic, ProjectionKind::Gnomonic, ProjectionKind::Mercator,
                 ProjectionKind::LambertAzimuthal, ProjectionKind::LambertCylindrical}) {
    if (s == name(k)) return k;
  }
  if (s == "lambert_azimuthal") return ProjectionKind::LambertAzimuthal;
  if (s == "lambert_cylindrical" || s == "cylindrical") return ProjectionKind::LambertCylindrical;
  return std::nullopt;
}

inline constexpr double kMercatorPolarMargin = 1e-6;
inline constexpr double kJacobianStep = 1e-6;

/// A projection kind with its anchor point: the projection pole for
/// stereographic, the tangent point for gnomonic and lambert azimuthal
/// (unused by the cylindrical kinds).
struct Projection {
  ProjectionKind kind = ProjectionKind::Stereographic;
  SPoint anchor = SPoint(0, 0, 1);

  static Projection stereographic(const SPoint& pole = SPoint(0, 0, 1)) { return {ProjectionKind::Stereographic, pole}; }
  static Projection gnomonic(const SPoint& tangent = SPoint(1, 0, 0)) { return {ProjectionKind::Gnomonic, tangent}; }
  static Projection mercator() { return {ProjectionKind::Mercator, SPoint(0, 0, 1)}; }
  static Projection lambert_azimuthal(const SPoint& tangent = SPoint(1, 0, 0)) {
    return {ProjectionKind::LambertAzimuthal, tangent};
  }
  static Projection lambert_cylindrical() { return {ProjectionKind::LambertCylindrical, SPoint(0, 0, 1)}; }

  /// Point mapped to the origin with the least distortion.
  SPoint center() const {
    switch (kind) {
      case ProjectionKind::Stereographic: return -anchor;
      case ProjectionKind::Gnomonic:
      case ProjectionKind::LambertAzimuthal: return anchor;
      default: return SPoint(1, 0, 0);
    }
  }

  bool cylindrical() const { return kind == ProjectionKind::Mercator || kind == ProjectionKind::LambertCylindrical; }
};

namespace detail {

/// Plane axes: orthonormal tangents at the anchor with e1 x e2 = anchor.
inline std::pair<Vec3, Vec3> plane_axes(const Projection& pr) { return orthonormal_basis(pr.anchor.vec()); }

inline double polar_lat_guard(const SPoint& p) {
  const double lat = std::atan2(p.z(), std::hypot(p.x(), p.y()));
  if (std::abs(lat) > kHalfPi - kMercatorPolarMargin) fail(ErrorCode::OutOfDomain, "|lat| must stay below pi/2 - 1e-6");
  return lat;
}

}  // namespace detail

inline Vec2 project(const Projection& pr, const SPoint& p) {
  const Vec3& v = p.vec();
  switch (pr.kind) {
    case ProjectionKind::Stereographic: {
      const double den = 1.0 - v.dot(pr.anchor.vec());
      if (den < 1e-12) fail(ErrorCode::OutOfDomain, "point must differ from the projection pole");
      const auto [e1, e2] = detail::plane_axes(pr);
      return Vec2(v.dot(e1), v.dot(e2)) / den;
    }
    case ProjectionKind::Gnomonic: {
      const double den = v.dot(pr.anchor.vec());
      if (den < 1e-9) fail(ErrorCode::OutOfDomain, "point must lie in the open hemisphere of the tangent point");
      const auto [e1, e2] = detail::plane_axes(pr);
      return Vec2(v.dot(e1), v.dot(e2)) / den;
    }
    case ProjectionKind::LambertAzimuthal: {
      const double den = 1.0 + v.dot(pr.anchor.vec());
      if (den < 1e-12) fail(ErrorCode::OutOfDomain, "point must differ from the antipode of the tangent point");
      const auto [e1, e2] = detail::plane_axes(pr);
      return Vec2(v.dot(e1), v.dot(e2)) * std::sqrt(2.0 / den);
    }
    case ProjectionKind::Mercator: {
      const double lat = detail::polar_lat_guard(p);
      return {std::atan2(v.y(), v.x()), std::asinh(std::tan(lat))};
    }
    case ProjectionKind::LambertCylindrical: {
      detail::polar_lat_guard(p);
      return {std::atan2(v.y(), v.x()), v.z()};
    }
  }
  return Vec2::Zero();
}

inline SPoint unproject(const Projection& pr, const Vec2& q) {
  if (!q.allFinite()) fail(ErrorCode::OutOfDomain, "plane point must be finite");
  switch (pr.kind) {
    case ProjectionKind::Stereographic: {
      const auto [e1, e2] = detail::plane_axes(pr);
      const double r2 = q.squaredNorm();
      return SPoint((2 * q.x() * e1 + 2 * q.y() * e2 + (r2 - 1) * pr.anchor.vec()) / (r2 + 1));
    }
    case ProjectionKind::Gnomonic: {
      const auto [e1, e2] = detail::plane_axes(pr);
      return SPoint(pr.anchor.vec() + q.x() * e1 + q.y() * e2);
    }
    case ProjectionKind::LambertAzimuthal: {
      const double r2 = q.squaredNorm();
      if (r2 >= 4.0) fail(ErrorCode::OutOfDomain, "plane point must lie inside the disk of radius 2");
      const auto [e1, e2] = detail::plane_axes(pr);
      const double s = std::sqrt(1.0 - r2 / 4);
      return SPoint((1.0 - r2 / 2) * pr.anchor.vec() + s * (q.x() * e1 + q.y() * e2));
    }
    case ProjectionKind::Mercator: {
      const double lat = std::atan(std::sinh(q.y()));
      if (std::abs(lat) > kHalfPi - kMercatorPolarMargin) fail(ErrorCode::OutOfDomain, "|v| maps too close to a pole");
      return from_geo(GeoCoord::make(lat, q.x()));
    }
    case ProjectionKind::LambertCylindrical: {
      if (std::abs(q.y()) >= 1.0) fail(ErrorCode::OutOfDomain, "|v| must be below 1");
      return from_geo(GeoCoord::make(std::asin(q.y()), q.x()));
    }
  }
  return SPoint();
}

/// Jacobian of `project` at p; columns are the images of the unit east and
/// north tangents.
inline Eigen::Matrix2d jacobian(const Projection& pr, const SPoint& p, double h = kJacobianStep) {
  project(pr, p);
  const auto [east, north] = east_north(p);
  Eigen::Matrix2d J;
  int col = 0;
  for (const Vec3& t : {east, north}) {
    Vec2 d = project(pr, travel(p, t, h)) - project(pr, travel(p, t, -h));
    if (pr.cylindrical()) d.x() = wrap_angle(d.x());
    J.col(col++) = d / (2 * h);
  }
  return J;
}

/// ||J^T J - s I|| / s with s the mean diagonal of J^T J; zero for conformal maps.
inline double conformality_defect(const Projection& pr, const SPoint& p) {
  const Eigen::Matrix2d J = jacobian(pr, p);
  const Eigen::Matrix2d G = J.transpose() * J;
  const double s = 0.5 * G.trace();
  return (G - s * Eigen::Matrix2d::Identity()).norm() / s;
}

/// |det J| - 1; zero for equal-area maps.
inline double area_scale_defect(const Projection& pr, const SPoint& p) {
  return std::abs(jacobian(pr, p).determinant()) - 1.0;
}

struct GraticuleCheck {
  Vec2 meridian;  ///< unit image direction of the local meridian (north)
  Vec2 parallel;  ///< unit image direction of the local parallel (east)
  double angle_defect = 0;  ///< max angle of the images from the vertical and horizontal axes
};

inline GraticuleCheck graticule_orthogonality(const Projection& pr, const SPoint& p) {
  const Eigen::Matrix2d J = jacobian(pr, p);
  GraticuleCheck g;
  g.parallel = J.col(0).normalized();
  g.meridian = J.col(1).normalized();
  g.angle_defect = std::max(std::asin(std::min(1.0, std::abs(g.meridian.x()))), std::asin(std::min(1.0, std::abs(g.parallel.y()))));
  return g;
}

/// n x n sample points spread over a region well inside the projection's domain.
inline std::vector<SPoint> domain_grid(const Projection& pr, int n) {
  std::vector<SPoint> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  if (pr.cylindrical()) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double lat = -1.3 + 2.6 * i / (n - 1.0);
        const double lon = -3.0 + 6.0 * j / (n - 1.0);
        out.push_back(from_geo(GeoCoord::make(lat, lon)));
      }
    }
    return out;
  }
  const double reach = pr.kind == ProjectionKind::Gnomonic ? 1.2 : pr.kind == ProjectionKind::Stereographic ? 2.6 : 2.8;
  const SPoint c = pr.center();
  const auto [e1, e2] = orthonormal_basis(c.vec());
  for (int i = 0; i < n; ++i) {
    const double d = 0.02 + (reach - 0.02) * i / (n - 1.0);
    for (int j = 0; j < n; ++j) {
      const double az = kTwoPi * j / n;
      out.push_back(travel(c, std::cos(az) * e1 + std::sin(az) * e2, d));
    }
  }
  return out;
}

/// Constant-bearing curve from `start` (bearing from north toward east),
/// sampled at n points over arc length `length`, by fourth-order
/// integration of dlat/ds = cos b, dlon/ds = sin b / cos lat.
/// Samples are (polar angle, unwrapped longitude) at arc-length parameters.
inline SurfacePath loxodrome(const SPoint& start, double bearing, double length, int n) {
  const GeoCoord g = to_geo(start);
  if (std::abs(g.lat) > kHalfPi - 1e-6) fail(ErrorCode::PolarStart, "a loxodrome cannot start at a pole");
  if (n < 2 || !(length > 0.0)) fail(ErrorCode::OutOfRange, "need n >= 2 samples over a positive length");
  const double cb = std::cos(bearing), sb = std::sin(bearing);
  auto rhs = [&](const Vec2& s) { return Vec2(cb, sb / std::cos(s.x())); };
  const double ds = length / (n - 1);
  const int sub = std::max(1, static_cast<int>(std::ceil(ds / 1e-3)));
  const double h = ds / sub;
  Vec2 s(g.lat, g.lon);
  SurfacePath out;
  out.xy.reserve(static_cast<std::size_t>(n));
  out.t.reserve(static_cast<std::size_t>(n));
  out.xy.emplace_back(kHalfPi - s.x(), s.y());
  out.t.push_back(0.0);
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k < sub; ++k) {
      const Vec2 k1 = rhs(s), k2 = rhs(s + h / 2 * k1), k3 = rhs(s + h / 2 * k2), k4 = rhs(s + h * k3);
      s += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      if (std::abs(s.x()) > kHalfPi - 1e-3) fail(ErrorCode::OutOfDomain, "loxodrome runs into the polar region");
    }
    out.xy.emplace_back(kHalfPi - s.x(), s.y());
    out.t.push_back(i * ds);
  }
  return out;
}

/// Largest distance of the mercator images of loxodrome samples from the
/// line through the first image with slope cot(bearing).
inline double loxodrome_mercator_deviation(const SurfacePath& path, double bearing) {
  auto img = [](const Vec2& xy) { return Vec2(xy.y(), std::asinh(std::tan(kHalfPi - xy.x()))); };
  const Vec2 q0 = img(path.xy.front());
  const Vec2 dir(std::sin(bearing), std::cos(bearing));
  double worst = 0;
  for (const Vec2& xy : path.xy) {
    const Vec2 d = img(xy) - q0;
    worst = std::max(worst, std::abs(dir.x() * d.y() - dir.y() * d.x()));
  }
  return worst;
}

/// Largest distance of n projected arc samples from the chord joining the
/// images of the arc's endpoints.
inline double geodesic_image_straightness(const Projection& pr, const Arc& arc, int n) {
  if (n < 3) fail(ErrorCode::OutOfRange, "need at least 3 samples");
  const Vec2 a = project(pr, arc.a), b = project(pr, arc.b);
  double worst = 0;
  for (int i = 1; i + 1 < n; ++i) worst = std::max(worst, line_distance(a, b, project(pr, arc.point_at(i / (n - 1.0)))));
  return worst;
}

struct NondevelopabilityWitness {
  double singular_ratio = 1;  ///< largest singular value over smallest, across the cap
  double det_spread = 1;      ///< largest |det J| over smallest, across the cap
  bool non_isometric = false;
};

/// Samples a cap of angular radius r around the projection's center and
/// reports how far the map is from an isometry there.
inline NondevelopabilityWitness nondevelopability_witness(const Projection& pr, double r) {
  if (!(r > 0.1 && r < 1.0)) fail(ErrorCode::OutOfRange, "cap radius must lie in (0.1, 1)");
  const SPoint c = pr.center();
  const auto [e1, e2] = orthonormal_basis(c.vec());
  double smax = 0, smin = 1e300, dmax = 0, dmin = 1e300;
  for (int ring = 0; ring <= 4; ++ring) {
    const int count = ring == 0 ? 1 : 12;
    for (int j = 0; j < count; ++j) {
      const double az = kTwoPi * j / count;
      const SPoint p = travel(c, std::cos(az) * e1 + std::sin(az) * e2, r * ring / 4.0);
      const Eigen::Matrix2d J = jacobian(pr, p);
      const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(J).singularValues();
      smax = std::max(smax, sv(0));
      smin = std::min(smin, sv(1));
      const double d = std::abs(J.determinant());
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
  }
  NondevelopabilityWitness w;
  w.singular_ratio = smax / smin;
  w.det_spread = dmax / dmin;
  const double bar = 1.0 + r * r / 100;
  w.non_isometric = w.singular_ratio > bar || w.det_spread > bar;
  return w;
}

/// Least-squares circle or line through planar points.
struct PlaneFit {
  bool is_line = false;
  PlanarCircle circle;
  Vec2 normal = Vec2::UnitY();  ///< line: normal . x = offset
  double offset = 0;
  double residual = 0;  ///< max distance of a point from the fitted curve
};

inline PlaneFit fit_circle_or_line(const std::vector<Vec2>& pts) {
  if (pts.size() < 3) fail(ErrorCode::OutOfRange, "need at least 3 points");
  const auto n = static_cast<Eigen::Index>(pts.size());
  Vec2 mean = Vec2::Zero();
  for (const Vec2& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());

  // Line through the centroid along the principal direction.
  Eigen::MatrixXd C(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) C.row(i) = (pts[static_cast<std::size_t>(i)] - mean).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> line_svd(C, Eigen::ComputeFullV);
  PlaneFit line;
  line.is_line = true;
  line.normal = line_svd.matrixV().col(1);
  line.offset = line.normal.dot(mean);
  for (const Vec2& p : pts) line.residual = std::max(line.residual, std::abs(line.normal.dot(p) - line.offset));

  // Algebraic circle x^2 + y^2 + D x + E y + F = 0 in centered coordinates, then Gauss-Newton on distances.
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 p = pts[static_cast<std::size_t>(i)] - mean;
    A.row(i) << p.x(), p.y(), 1.0;
    b(i) = -p.squaredNorm();
  }
  const Eigen::Vector3d s = A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  Vec2 c(-s(0) / 2, -s(1) / 2);
  double R2 = c.squaredNorm() - s(2);
  PlaneFit circ;
  if (std::isfinite(R2) && R2 > 0 && c.allFinite()) {
    double R = std::sqrt(R2);
    for (int it = 0; it < 10; ++it) {
      Eigen::MatrixXd G(n, 3);
      Eigen::VectorXd r(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const Vec2 d = pts[static_cast<std::size_t>(i)] - mean - c;
        const double len = d.norm();
        r(i) = len - R;
        G.row(i) << -d.x() / len, -d.y() / len, -1.0;
      }
      const Eigen::Vector3d step = G.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r);
      c += step.head<2>();
      R += step(2);
      if (step.norm() < 1e-15 * std::max(1.0, R)) break;
    }
    circ.circle = PlanarCircle{c + mean, std::abs(R)};
    for (const Vec2& p : pts) circ.residual = std::max(circ.residual, circ.circle.distance_from(p));
  } else {
    circ.residual = 1e300;
  }
  return circ.residual <= line.residual ? circ : line;
}

struct LexellImageCheck {
  PlaneFit fit;
  double angle_sum_spread = 0;  ///< max - min of the apex triangles' angle sums
  std::vector<Vec2> images;
};

/// Stereographic images of apexes sampled on the fixed-area locus over base
/// AB: they lie on one planar circle (or line), and every triangle has the
/// same angle sum.
inline LexellImageCheck lexell_image_check(const SPoint& A, const SPoint& B, double area,
                                           const SPoint& pole = SPoint(0, 0, 1), int samples = 50) {
  const LexellConstruction k = lexell_circle_euler(A, B, area);
  const Projection pr = Projection::stereographic(pole);
  LexellImageCheck out;
  double lo = 1e300, hi = -1e300;
  for (const SPoint& v : k.sample_apexes(samples)) {
    out.images.push_back(project(pr, v));
    const double sum = interior_angle(A, B, v) + interior_angle(B, v, A) + interior_angle(v, A, B);
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  out.fit = fit_circle_or_line(out.images);
  out.angle_sum_spread = hi - lo;
  return out;
}

}  // namespace sphgeom

#endif  // SPHGEOM_PROJECTIONS_HPP
