#ifndef SPHGEOM_AREA_HPP
#define SPHGEOM_AREA_HPP

// Area of spherical triangles on the unit sphere by several classical routes.
// Every function returns the full triangle area (equal to the angular excess);
// formulas written for the half-area delta are converted here.

#include <array>
#include <cmath>
#include <string_view>

#include "sphgeom/core.hpp"
#include "sphgeom/trig.hpp"

namespace sphgeom {

enum class AreaMethod { Excess, EulerTan, EulerCos, Lagrange, PuissantSas, PuissantAlt };

inline constexpr std::array<AreaMethod, 6> kAllAreaMethods{AreaMethod::Excess,   AreaMethod::EulerTan,
                                                           AreaMethod::EulerCos, AreaMethod::Lagrange,
                                                           AreaMethod::PuissantSas, AreaMethod::PuissantAlt};

constexpr std::string_view name(AreaMethod m) {
  switch (m) {
    case AreaMethod::Excess: return "excess";
    case AreaMethod::EulerTan: return "euler_tan";
    case AreaMethod::EulerCos: return "euler_cos";
    case AreaMethod::Lagrange: return "lagrange";
    case AreaMethod::PuissantSas: return "puissant_sas";
    case AreaMethod::PuissantAlt: return "puissant_alt";
  }
  return "?";
}

namespace area_formula {

inline double excess(double A, double B, double C) { return A + B + C - kPi; }

/// tan(delta/2) = sqrt(1 - cos^2 a - cos^2 b - cos^2 c + 2 cos a cos b cos c) / (1 + cos a + cos b + cos c)
inline double euler_tan(double a, double b, double c) {
  const double ca = std::cos(a), cb = std::cos(b), cc = std::cos(c);
  const double rad = std::max(0.0, 1.0 - ca * ca - cb * cb - cc * cc + 2.0 * ca * cb * cc);
  return 2.0 * std::atan2(std::sqrt(rad), 1.0 + ca + cb + cc);
}

/// cos(delta/2) = (1 + cos a + cos b + cos c) / (4 cos(a/2) cos(b/2) cos(c/2))
inline double euler_cos(double a, double b, double c) {
  const double num = 1.0 + std::cos(a) + std::cos(b) + std::cos(c);
  const double den = 4.0 * std::cos(a / 2) * std::cos(b / 2) * std::cos(c / 2);
  return 2.0 * std::acos(clamp_unit(num / den));
}

/// tan(delta/2) = 2 sqrt(sin s sin(s-a) sin(s-b) sin(s-c)) / (1 + cos a + cos b + cos c), s = (a+b+c)/2
inline double lagrange(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double prod = std::sin(s) * std::sin(s - a) * std::sin(s - b) * std::sin(s - c);
  return 2.0 * std::atan2(2.0 * std::sqrt(std::max(0.0, prod)), 1.0 + std::cos(a) + std::cos(b) + std::cos(c));
}

/// tan(delta/2) = tan(a/2) tan(b/2) sin C / (1 + tan(a/2) tan(b/2) cos C)
inline double puissant_sas(double a, double b, double C) {
  const double t = std::tan(a / 2) * std::tan(b / 2);
  return 2.0 * std::atan2(t * std::sin(C), 1.0 + t * std::cos(C));
}

/// cot(delta/2) = (1 + cos a + cos b + cos c) / (sin a sin b sin C)
inline double puissant_alt(double a, double b, double c, double C) {
  return 2.0 * std::atan2(std::sin(a) * std::sin(b) * std::sin(C), 1.0 + std::cos(a) + std::cos(b) + std::cos(c));
}

}  // namespace area_formula

inline double area(const TriangleElements& e, AreaMethod method) {
  for (double v : {e.a, e.b, e.c, e.A, e.B, e.C}) {
    if (!(v > 0.0 && v < kPi)) fail(ErrorCode::InvalidElements, "triangle elements must lie in (0, pi)");
  }
  double value = 0.0;
  switch (method) {
    case AreaMethod::Excess: value = area_formula::excess(e.A, e.B, e.C); break;
    case AreaMethod::EulerTan: value = area_formula::euler_tan(e.a, e.b, e.c); break;
    case AreaMethod::EulerCos: value = area_formula::euler_cos(e.a, e.b, e.c); break;
    case AreaMethod::Lagrange: value = area_formula::lagrange(e.a, e.b, e.c); break;
    case AreaMethod::PuissantSas: value = area_formula::puissant_sas(e.a, e.b, e.C); break;
    case AreaMethod::PuissantAlt: value = area_formula::puissant_alt(e.a, e.b, e.c, e.C); break;
  }
  if (!(value > 0.0 && value < kTwoPi)) fail(ErrorCode::InvalidElements, "elements do not describe a proper triangle");
  return value;
}

inline double area(const SphTriangle& t, AreaMethod method = AreaMethod::Excess) { return area(t.elements(), method); }

/// Lexell's parametrization of a triangle ABV: `a` is half the base
/// (AC = CB = a with C the base midpoint), `x` the signed offset CR of the
/// foot R of the altitude from V, `y` the altitude VR.
struct LexellXY {
  double a = 0;
  double x = 0;
  double y = 0;
};

/// cot(delta) = (cos y cos x + cos a) / (sin a sin y); returns the full area 2 delta.
inline double area_lexell_xy(const LexellXY& p) {
  if (!(p.a > 0.0 && p.a <= kHalfPi)) fail(ErrorCode::OutOfRange, "half-base must lie in (0, pi/2]");
  if (!(p.y <= kHalfPi) || !std::isfinite(p.x)) fail(ErrorCode::OutOfRange, "height must lie in (0, pi/2]");
  if (!(p.y > 1e-12)) fail(ErrorCode::DegenerateHeight, "apex lies on the base great circle");
  const double half = std::atan2(std::sin(p.a) * std::sin(p.y), std::cos(p.y) * std::cos(p.x) + std::cos(p.a));
  return 2.0 * half;
}

/// Lexell coordinates of triangle (A, B, V) with base AB and apex V.
inline LexellXY lexell_xy_of(const SPoint& A, const SPoint& B, const SPoint& V) {
  const SPoint C = midpoint(A, B);
  SPoint n(A.vec().cross(B.vec()));
  if (n.dot(V) < 0) n = -n;
  const double h = std::asin(std::min(1.0, V.dot(n)));
  const Vec3 foot = V.vec() - V.dot(n) * n.vec();
  if (foot.norm() < 1e-12) fail(ErrorCode::DegenerateHeight, "apex at the pole of the base: foot undefined");
  const SPoint R(foot);
  const Vec3 along = tangent_toward(C, B);
  const double x = std::atan2(R.vec().dot(along), R.dot(C));
  return {0.5 * dist(A, B), x, h};
}

/// Area of a lune with angle A.
inline double lune_area(double A) {
  if (!(A > 0.0 && A <= kPi)) fail(ErrorCode::OutOfRange, "lune angle must lie in (0, pi]");
  return 2.0 * A;
}

/// Outcome of perturbing the apex Z of triangle ABZ so that the base angles
/// change by (dphi, dpsi), compared against
///   dArea = dphi (1 - cos x) + dpsi (1 - cos y),  x = AZ, y = BZ.
struct AreaDifferential {
  double actual = 0;     ///< area change measured by excess
  double predicted = 0;  ///< first-order prediction
  double residual = 0;   ///< |actual - predicted|
};

/// The triangle's third vertex C plays the apex Z; A and B form the base.
inline AreaDifferential area_differential_check(const SphTriangle& t, double dphi, double dpsi) {
  if (std::abs(dphi) > 1e-4 || std::abs(dpsi) > 1e-4) fail(ErrorCode::OutOfRange, "perturbations must not exceed 1e-4");
  const SPoint &A = t.A(), &B = t.B(), &Z = t.C();
  const double x = dist(A, Z), y = dist(B, Z);
  const double s = orientation(A, B, Z) > 0 ? 1.0 : -1.0;
  // Rotating Z about A by +s*dphi opens the angle at A; about B by -s*dpsi opens the angle at B.
  const SPoint za = rotate(Z, A.vec(), s * dphi);
  const SPoint zb = rotate(Z, B.vec(), -s * dpsi);
  const Vec3 ga = A.vec().cross(za.vec());
  const Vec3 gb = B.vec().cross(zb.vec());
  Vec3 v = ga.cross(gb);
  if (v.norm() < 1e-14) fail(ErrorCode::DegenerateTriangle, "perturbed sides do not meet");
  if (v.dot(Z.vec()) < 0) v = -v;
  const SPoint Z2(v);
  const double before = area(t);
  const double after = area(SphTriangle::from_vertices(A, B, Z2));
  AreaDifferential out;
  out.actual = after - before;
  out.predicted = dphi * (1.0 - std::cos(x)) + dpsi * (1.0 - std::cos(y));
  out.residual = std::abs(out.actual - out.predicted);
  return out;
}

}  // namespace sphgeom

#endif  // SPHGEOM_AREA_HPP
