#ifndef SPHGEOM_GEODESICS_HPP
#define SPHGEOM_GEODESICS_HPP

// Shortest lines on the sphere from the length element
//   ds^2 = dx^2 + sin^2(x) dy^2,   x = polar angle, y = azimuth,
// whose Euler-Lagrange equations along an arc-length parametrization are
//   x'' = sin x cos x y'^2,   y'' = -2 cot x x' y',
// with the first integral c = sin^2(x) y'.
//
// Headings are measured from north (decreasing x) towards east (increasing y).
// Every chart is a rotated copy of the standard one, given by the matrix
// `frame` whose columns are the chart's axes in world coordinates.

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "sphgeom/core.hpp"

namespace sphgeom {

/// Closest a path may come to the chart's poles (in polar angle).
inline constexpr double kPolarMargin = 0.05;
inline constexpr double kGeodesicStep = 1e-3;

inline Vec3 surface_to_vec(double x, double y) {
  return {std::sin(x) * std::cos(y), std::sin(x) * std::sin(y), std::cos(x)};
}

/// (polar angle, azimuth) of a unit vector.
inline Vec2 vec_to_surface(const Vec3& v) {
  return {std::atan2(std::hypot(v.x(), v.y()), v.z()), std::atan2(v.y(), v.x())};
}

/// Samples (x, y) of a curve at increasing parameter values t.
struct SurfacePath {
  std::vector<Vec2> xy;
  std::vector<double> t;
};

struct GeodesicSolution {
  SurfacePath path;       ///< chart coordinates, parametrized by arc length
  Mat3 frame = Mat3::Identity();
  double length = 0;
  double first_integral = 0;  ///< c = sin^2 x dy/ds at the start
  double drift = 0;           ///< max |c(s) - c(0)| along the path
  double heading = 0;         ///< initial heading in the chart

  SPoint point(std::size_t i) const { return SPoint(frame * surface_to_vec(path.xy[i].x(), path.xy[i].y())); }
  SPoint end() const { return point(path.xy.size() - 1); }
};

namespace detail {

using GeoState = std::array<double, 4>;  // x, y, x', y'

inline GeoState geodesic_rhs(const GeoState& s) {
  const double sx = std::sin(s[0]), cx = std::cos(s[0]);
  return {s[2], s[3], sx * cx * s[3] * s[3], -2.0 * (cx / sx) * s[2] * s[3]};
}

inline GeoState axpy(const GeoState& s, double h, const GeoState& k) {
  return {s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]};
}

inline GeoState rk4_step(const GeoState& s, double h) {
  const GeoState k1 = geodesic_rhs(s);
  const GeoState k2 = geodesic_rhs(axpy(s, h / 2, k1));
  const GeoState k3 = geodesic_rhs(axpy(s, h / 2, k2));
  const GeoState k4 = geodesic_rhs(axpy(s, h, k3));
  GeoState out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

/// Unit north and east tangents at chart coordinates (x, y), in chart axes.
inline std::pair<Vec3, Vec3> chart_north_east(double x, double y) {
  const Vec3 north(-std::cos(x) * std::cos(y), -std::cos(x) * std::sin(y), std::sin(x));
  const Vec3 east(-std::sin(y), std::cos(y), 0.0);
  return {north, east};
}

/// Chart whose pole sits 45 degrees from the pole of the great circle
/// through p with tangent t, so that the whole circle stays at polar angles
/// in [pi/4, 3pi/4].
inline Mat3 tilted_frame(const Vec3& p, const Vec3& t) {
  const Vec3 n = p.cross(t).normalized();
  const Vec3 z = (n + p).normalized();
  const Vec3 x = (p - p.dot(z) * z).normalized();
  Mat3 R;
  R.col(0) = x;
  R.col(1) = z.cross(x);
  R.col(2) = z;
  return R;
}

inline GeodesicSolution integrate_in_chart(const Vec2& start, double heading, double L, double step, const Mat3& frame) {
  const double x0 = start.x();
  if (x0 < 1e-6 || x0 > kPi - 1e-6) fail(ErrorCode::SingularCoordinate, "start lies at a pole of the chart");
  const int n = std::max(1, static_cast<int>(std::ceil(L / step - 1e-12)));
  const double h = L / n;
  GeoState s{x0, start.y(), -std::cos(heading), std::sin(heading) / std::sin(x0)};
  GeodesicSolution sol;
  sol.frame = frame;
  sol.length = L;
  sol.heading = heading;
  sol.first_integral = std::sin(x0) * std::sin(x0) * s[3];
  sol.path.xy.reserve(static_cast<std::size_t>(n) + 1);
  sol.path.t.reserve(static_cast<std::size_t>(n) + 1);
  sol.path.xy.emplace_back(s[0], s[1]);
  sol.path.t.push_back(0.0);
  for (int i = 1; i <= n; ++i) {
    s = rk4_step(s, h);
    if (s[0] < kPolarMargin || s[0] > kPi - kPolarMargin) {
      fail(ErrorCode::SingularCoordinate, "path enters the polar band of the chart");
    }
    const double sx = std::sin(s[0]);
    sol.drift = std::max(sol.drift, std::abs(sx * sx * s[3] - sol.first_integral));
    sol.path.xy.emplace_back(s[0], s[1]);
    sol.path.t.push_back(i * h);
  }
  return sol;
}

}  // namespace detail

struct ShootOptions {
  double step = kGeodesicStep;
  Mat3 frame = Mat3::Identity();  ///< chart of `start` and `heading`
  bool reframe = true;            ///< retry in a tilted chart instead of failing near a pole
};

/// Integrates the geodesic equations from chart point `start` = (x, y) with
/// the given heading for arc length L.
inline GeodesicSolution geodesic_shoot(const Vec2& start, double heading, double L, const ShootOptions& opt = {}) {
  if (!(L > 0.0 && L < kPi)) fail(ErrorCode::OutOfRange, "length must lie in (0, pi)");
  if (!(opt.step > 0.0)) fail(ErrorCode::OutOfRange, "step must be positive");
  try {
    return detail::integrate_in_chart(start, heading, L, opt.step, opt.frame);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularCoordinate || !opt.reframe) throw;
    if (start.x() < 1e-6 || start.x() > kPi - 1e-6) throw;
  }
  // Same start and direction, expressed in a chart that keeps the path away from its poles.
  const auto [north, east] = detail::chart_north_east(start.x(), start.y());
  const Vec3 p = opt.frame * surface_to_vec(start.x(), start.y());
  const Vec3 t = opt.frame * (std::cos(heading) * north + std::sin(heading) * east);
  const Mat3 R = detail::tilted_frame(p, t);
  const Vec2 local = vec_to_surface(R.transpose() * p);
  const auto [ln, le] = detail::chart_north_east(local.x(), local.y());
  const Vec3 tl = R.transpose() * t;
  return detail::integrate_in_chart(local, std::atan2(tl.dot(le), tl.dot(ln)), L, opt.step, R);
}

/// Shortest path from p to q by shooting: Newton iteration on (heading,
/// length) starting from the ambient bearing and the chord length.
inline GeodesicSolution geodesic_connect(const SPoint& p, const SPoint& q, double step = kGeodesicStep) {
  const Vec3 pq = p.vec().cross(q.vec());
  if (pq.norm() < 1e-12) {
    if (p.dot(q) < 0) fail(ErrorCode::AntipodalEndpoints, "every half great circle joins antipodal points");
    fail(ErrorCode::DegenerateInput, "endpoints coincide");
  }
  const Vec3 t0 = tangent_toward(p, q);
  const Mat3 R = detail::tilted_frame(p.vec(), t0);
  const Vec2 start = vec_to_surface(R.transpose() * p.vec());
  const Vec3 target = R.transpose() * q.vec();
  const auto [north, east] = detail::chart_north_east(start.x(), start.y());
  const Vec3 tl = R.transpose() * t0;

  // Residual: endpoint miss in the tangent plane at q.
  const Vec2 tq = vec_to_surface(target);
  const auto [qn, qe] = detail::chart_north_east(tq.x(), tq.y());
  auto miss = [&](double heading, double L) {
    const auto sol = detail::integrate_in_chart(start, heading, L, step, Mat3::Identity());
    const Vec2 e = sol.path.xy.back();
    const Vec3 d = surface_to_vec(e.x(), e.y()) - target;
    return Vec2(d.dot(qn), d.dot(qe));
  };

  double heading = std::atan2(tl.dot(east), tl.dot(north));
  double L = (q.vec() - p.vec()).norm();
  bool converged = false;
  for (int it = 0; it < 30 && !converged; ++it) {
    const Vec2 r = miss(heading, L);
    if (r.norm() < 1e-13) {
      converged = true;
      break;
    }
    const double dh = 1e-7;
    Eigen::Matrix2d J;
    J.col(0) = (miss(heading + dh, L) - miss(heading - dh, L)) / (2 * dh);
    J.col(1) = (miss(heading, L + dh) - miss(heading, L - dh)) / (2 * dh);
    Vec2 delta = J.fullPivLu().solve(r);
    // Damp steps that would leave the admissible length range.
    for (int k = 0; k < 60 && !(L - delta.y() > 0.0 && L - delta.y() < kPi); ++k) delta *= 0.5;
    if (!delta.allFinite()) fail(ErrorCode::NoConvergence, "shooting Jacobian is singular");
    heading -= delta.x();
    L -= delta.y();
    converged = delta.norm() < 1e-14;
  }
  if (!converged && miss(heading, L).norm() > 1e-9) fail(ErrorCode::NoConvergence, "shooting did not converge");
  auto sol = detail::integrate_in_chart(start, heading, L, step, Mat3::Identity());
  sol.frame = R;
  return sol;
}

namespace detail {

inline double length_integrand(const Vec2& xy, const Vec2& d) {
  const double s = std::sin(xy.x());
  return std::sqrt(d.x() * d.x() + s * s * d.y() * d.y());
}

/// Composite Simpson (with a 3/8 panel when the interval count is odd).
inline double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return 0.5 * h * (f[0] + f[1]);
  if (n == 2) return h / 3 * (f[0] + 4 * f[1] + f[2]);
  std::size_t m = n % 2 == 0 ? n : n - 3;
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= m; i += 2) sum += h / 3 * (f[i] + 4 * f[i + 1] + f[i + 2]);
  if (m != n) sum += 3 * h / 8 * (f[m] + 3 * f[m + 1] + 3 * f[m + 2] + f[m + 3]);
  return sum;
}

inline void check_chart(const Vec2& xy) {
  if (xy.x() < 1e-6 || xy.x() > kPi - 1e-6) fail(ErrorCode::SingularCoordinate, "path touches a pole of the chart");
}

}  // namespace detail

/// Length of a sampled path: fourth-order finite-difference derivatives in
/// the (uniform) parameter, integrated by Simpson's rule.
inline double path_length(const SurfacePath& p) {
  const std::size_t n = p.xy.size();
  if (n < 2 || p.t.size() != n) fail(ErrorCode::InvalidConfig, "a path needs at least two samples with parameters");
  for (const Vec2& xy : p.xy) detail::check_chart(xy);
  const double h = (p.t.back() - p.t.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) fail(ErrorCode::InvalidConfig, "parameter must increase");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(p.t[i] - (p.t.front() + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(p.t.back()))) {
      fail(ErrorCode::InvalidConfig, "parameter samples must be uniformly spaced");
    }
  }
  if (n < 5) {
    double sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const Vec2 mid = 0.5 * (p.xy[i] + p.xy[i - 1]);
      sum += detail::length_integrand(mid, (p.xy[i] - p.xy[i - 1]) / h);
    }
    return sum * h;
  }
  std::vector<double> f(n);
  const auto& y = p.xy;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 d;
    if (i >= 2 && i + 2 < n) {
      d = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    } else if (i < 2) {
      // One-sided five-point stencils.
      const Vec2 &a = y[0], &b = y[1], &c = y[2], &e = y[3], &g = y[4];
      d = i == 0 ? Vec2((-25.0 * a + 48.0 * b - 36.0 * c + 16.0 * e - 3.0 * g) / (12.0 * h))
                 : Vec2((-3.0 * a - 10.0 * b + 18.0 * c - 6.0 * e + g) / (12.0 * h));
    } else {
      const Vec2 &a = y[n - 1], &b = y[n - 2], &c = y[n - 3], &e = y[n - 4], &g = y[n - 5];
      d = i == n - 1 ? Vec2(-(-25.0 * a + 48.0 * b - 36.0 * c + 16.0 * e - 3.0 * g) / (12.0 * h))
                     : Vec2(-(-3.0 * a - 10.0 * b + 18.0 * c - 6.0 * e + g) / (12.0 * h));
    }
    f[i] = detail::length_integrand(y[i], d);
  }
  return detail::simpson(f, h);
}

/// Length of a parametric path t -> (x, y) on [t0, t1], doubling the
/// sampling until two successive results agree within `gate`.
inline double path_length(const std::function<Vec2(double)>& path, double t0, double t1, double gate = 1e-10) {
  if (!(t1 > t0)) fail(ErrorCode::InvalidConfig, "parameter interval must be nonempty");
  auto sample = [&](int n) {
    SurfacePath p;
    for (int i = 0; i <= n; ++i) {
      const double t = t0 + (t1 - t0) * i / n;
      p.t.push_back(t);
      p.xy.push_back(path(t));
    }
    return path_length(p);
  };
  double prev = sample(32);
  for (int n = 64; n <= (1 << 18); n *= 2) {
    const double cur = sample(n);
    if (std::abs(cur - prev) < gate) return cur;
    prev = cur;
  }
  fail(ErrorCode::NoConvergence, "path length did not settle under refinement");
}

}  // namespace sphgeom

#endif  // SPHGEOM_GEODESICS_HPP
