#ifndef SPHGEOM_TRIG_HPP
#define SPHGEOM_TRIG_HPP

// Spherical triangles: element sets, the general six-case solver, the
// right-angled solver, polar duality and the dihedral angles of the regular
// solids from their vertex figures.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sphgeom/core.hpp"

namespace sphgeom {

/// The six elements of a spherical triangle. Side a is opposite vertex A.
struct TriangleElements {
  double a = 0, b = 0, c = 0;
  double A = 0, B = 0, C = 0;

  double angle_sum() const { return A + B + C; }
};

class SphTriangle {
 public:
  static SphTriangle from_vertices(const SPoint& A, const SPoint& B, const SPoint& C) {
    SphTriangle t(A, B, C);
    const auto& e = t.e_;
    for (double s : {e.a, e.b, e.c}) {
      if (!(s > 1e-12 && s < kPi - 1e-12)) fail(ErrorCode::DegenerateTriangle, "triangle sides must lie in (0, pi)");
    }
    if (std::abs(orientation(A, B, C)) < 1e-15) fail(ErrorCode::DegenerateTriangle, "vertices lie on one great circle");
    return t;
  }

  const SPoint& A() const { return A_; }
  const SPoint& B() const { return B_; }
  const SPoint& C() const { return C_; }
  const TriangleElements& elements() const { return e_; }

 private:
  SphTriangle(const SPoint& A, const SPoint& B, const SPoint& C) : A_(A), B_(B), C_(C) {
    e_.a = dist(B, C);
    e_.b = dist(C, A);
    e_.c = dist(A, B);
    e_.A = interior_angle(A, B, C);
    e_.B = interior_angle(B, C, A);
    e_.C = interior_angle(C, A, B);
  }

  SPoint A_, B_, C_;
  TriangleElements e_;
};

/// Vertex realization in the canonical pose: A = (1,0,0), B in the z = 0
/// plane with y > 0, C in the z > 0 half-space.
inline SphTriangle realize(const TriangleElements& e) {
  const SPoint A(1.0, 0.0, 0.0);
  const SPoint B(std::cos(e.c), std::sin(e.c), 0.0);
  const SPoint C(std::cos(e.b), std::sin(e.b) * std::cos(e.A), std::sin(e.b) * std::sin(e.A));
  return SphTriangle::from_vertices(A, B, C);
}

/// Residuals of the sine rule and the two cosine-type basic formulas:
///   sin A / sin a = sin B / sin b = sin C / sin c
///   cos A sin c = cos a sin b - sin a cos b cos C
///   cos c = cos a cos b + sin a sin b cos C
inline double basic_formula_residual(const TriangleElements& e) {
  using std::cos;
  using std::sin;
  const double ra = sin(e.A) / sin(e.a), rb = sin(e.B) / sin(e.b), rc = sin(e.C) / sin(e.c);
  double r = std::max({std::abs(ra - rb), std::abs(rb - rc), std::abs(ra - rc)});
  r = std::max(r, std::abs(cos(e.A) * sin(e.c) - (cos(e.a) * sin(e.b) - sin(e.a) * cos(e.b) * cos(e.C))));
  r = std::max(r, std::abs(cos(e.c) - (cos(e.a) * cos(e.b) + sin(e.a) * sin(e.b) * cos(e.C))));
  return r;
}

inline TriangleElements polar_elements(const TriangleElements& e) {
  return {kPi - e.A, kPi - e.B, kPi - e.C, kPi - e.a, kPi - e.b, kPi - e.c};
}

/// Polar triangle: A' is the pole of arc BC on the same side as A, cyclically.
inline SphTriangle polar(const SphTriangle& t) {
  auto pole_toward = [](const SPoint& p, const SPoint& q, const SPoint& side) {
    SPoint n(p.vec().cross(q.vec()));
    return n.dot(side) >= 0 ? n : -n;
  };
  return SphTriangle::from_vertices(pole_toward(t.B(), t.C(), t.A()), pole_toward(t.C(), t.A(), t.B()),
                                    pole_toward(t.A(), t.B(), t.C()));
}

namespace detail {

inline bool in_open_range(double v) { return v > 0.0 && v < kPi && std::isfinite(v); }

inline void require_range(std::initializer_list<double> vals) {
  for (double v : vals) {
    if (!in_open_range(v)) fail(ErrorCode::InvalidElements, "triangle elements must lie in (0, pi)");
  }
}

inline void dedupe(std::vector<TriangleElements>& sols) {
  std::vector<TriangleElements> out;
  for (const auto& s : sols) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const TriangleElements& o) {
      return std::abs(o.a - s.a) < 1e-9 && std::abs(o.b - s.b) < 1e-9 && std::abs(o.c - s.c) < 1e-9;
    });
    if (!dup) out.push_back(s);
  }
  sols = std::move(out);
}

}  // namespace detail

/// Sides a, b and the included angle C.
inline TriangleElements solve_sas(double a, double b, double C) {
  detail::require_range({a, b, C});
  const SPoint vc(1.0, 0.0, 0.0);
  const SPoint vb(std::cos(a), std::sin(a), 0.0);
  const SPoint va(std::cos(b), std::sin(b) * std::cos(C), std::sin(b) * std::sin(C));
  TriangleElements e = SphTriangle::from_vertices(va, vb, vc).elements();
  e.a = a;
  e.b = b;
  e.C = C;
  return e;
}

/// Three sides; angles by the half-angle formulas.
inline TriangleElements solve_sss(double a, double b, double c) {
  detail::require_range({a, b, c});
  const double s = 0.5 * (a + b + c);
  const double sa = std::sin(s - a), sb = std::sin(s - b), sc = std::sin(s - c), ss = std::sin(s);
  if (!(s - a > 0 && s - b > 0 && s - c > 0 && s < kPi) || sa <= 0 || sb <= 0 || sc <= 0 || ss <= 0) {
    fail(ErrorCode::Inconsistent, "sides violate the spherical triangle inequalities");
  }
  auto half = [&](double x, double y, double opp) { return 2.0 * std::atan2(std::sqrt(x * y), std::sqrt(ss * opp)); };
  return {a, b, c, half(sb, sc, sa), half(sc, sa, sb), half(sa, sb, sc)};
}

/// Angle A, included side c, angle B; solved on the polar triangle.
inline TriangleElements solve_asa(double A, double c, double B) {
  detail::require_range({A, c, B});
  return polar_elements(solve_sas(kPi - A, kPi - B, kPi - c));
}

/// Three angles; solved as the polar triangle's three sides.
inline TriangleElements solve_aaa(double A, double B, double C) {
  detail::require_range({A, B, C});
  if (A + B + C <= kPi) fail(ErrorCode::Inconsistent, "angle sum of a spherical triangle exceeds pi");
  return polar_elements(solve_sss(kPi - A, kPi - B, kPi - C));
}

/// Sides a, b and the angle A opposite a. Returns 0, 1 or 2 solutions sorted
/// by the ambiguous angle B.
inline std::vector<TriangleElements> solve_ssa(double a, double b, double A) {
  detail::require_range({a, b, A});
  // cos a = cos b cos c + sin b sin c cos A, written as R cos(c - theta) = cos a.
  const double R = std::hypot(std::cos(b), std::sin(b) * std::cos(A));
  if (R < 1e-14) {
    if (std::abs(std::cos(a)) < 1e-12) fail(ErrorCode::Degenerate, "b = A = pi/2 leaves side c undetermined");
    return {};
  }
  const double k = std::cos(a) / R;
  if (std::abs(k) > 1.0 + 1e-12) return {};
  const double theta = std::atan2(std::sin(b) * std::cos(A), std::cos(b));
  const double spread = std::acos(clamp_unit(k));
  std::vector<TriangleElements> sols;
  for (double c : {theta - spread, theta + spread}) {
    c = std::remainder(c, kTwoPi);
    if (!(c > 1e-12 && c < kPi - 1e-12)) continue;
    TriangleElements e;
    try {
      e = solve_sas(b, c, A);  // sides b, c around A; rename to the caller's labels below
    } catch (const Error&) {
      continue;
    }
    // solve_sas(x, y, Z) labels x = "a", y = "b", Z = "C"; map back.
    TriangleElements r{e.c, b, c, A, e.A, e.B};
    if (std::abs(r.a - a) > 1e-8) continue;
    sols.push_back(r);
  }
  detail::dedupe(sols);
  std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) { return x.B < y.B; });
  return sols;
}

/// Side a, its opposite angle A and angle B; solved on the polar triangle.
inline std::vector<TriangleElements> solve_saa(double a, double A, double B) {
  detail::require_range({a, A, B});
  std::vector<TriangleElements> sols;
  for (const auto& p : solve_ssa(kPi - A, kPi - B, kPi - a)) sols.push_back(polar_elements(p));
  std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) { return x.b < y.b; });
  return sols;
}

enum class RightElement { a, b, c, A, B };

/// Right-angled triangle (C = pi/2) from two of its other elements. The
/// hypotenuse is c; the legs are a and b.
inline std::vector<TriangleElements> solve_right(RightElement first, double v1, RightElement second, double v2) {
  using E = RightElement;
  if (first == second) fail(ErrorCode::InvalidElements, "two distinct elements are required");
  detail::require_range({v1, v2});
  if (first > second) {
    std::swap(first, second);
    std::swap(v1, v2);
  }
  // Work with a canonical pair by mirroring b <-> a, B <-> A where needed.
  auto mirror = [](E e) {
    switch (e) {
      case E::a: return E::b;
      case E::b: return E::a;
      case E::A: return E::B;
      case E::B: return E::A;
      default: return e;
    }
  };
  bool mirrored = false;
  E f = first, s = second;
  if ((f == E::b && s == E::c) || (f == E::b && s == E::B) || (f == E::b && s == E::A) || (f == E::c && s == E::B)) {
    f = mirror(f);
    s = mirror(s);
    mirrored = true;
    if (f > s) {
      std::swap(f, s);
      std::swap(v1, v2);
    }
  }

  constexpr double kFlat = 1e-12;
  auto is_quarter = [](double v) { return std::abs(std::cos(v)) < kFlat; };
  std::vector<std::pair<double, double>> legs;  // candidate (a, b) in the canonical labeling

  if (f == E::a && s == E::b) {
    legs.emplace_back(v1, v2);
  } else if (f == E::a && s == E::c) {
    if (is_quarter(v1)) {
      if (is_quarter(v2)) fail(ErrorCode::Degenerate, "leg a = pi/2 with c = pi/2 leaves b undetermined");
      fail(ErrorCode::Inconsistent, "leg a = pi/2 forces c = pi/2");
    }
    const double k = std::cos(v2) / std::cos(v1);
    if (std::abs(k) > 1.0 + 1e-12) fail(ErrorCode::Inconsistent, "no right triangle with these sides");
    legs.emplace_back(v1, std::acos(clamp_unit(k)));
  } else if (f == E::a && s == E::A) {
    if (is_quarter(v1) || is_quarter(v2)) {
      if (is_quarter(v1) && is_quarter(v2)) fail(ErrorCode::Degenerate, "a = A = pi/2 leaves b undetermined");
      fail(ErrorCode::Inconsistent, "a = pi/2 and A = pi/2 must occur together");
    }
    const double sb = std::tan(v1) / std::tan(v2);
    if (!(sb > 0.0) || sb > 1.0 + 1e-12) fail(ErrorCode::Inconsistent, "no right triangle with this leg and opposite angle");
    const double b0 = std::asin(std::min(1.0, sb));
    legs.emplace_back(v1, b0);
    legs.emplace_back(v1, kPi - b0);
  } else if (f == E::a && s == E::B) {
    legs.emplace_back(v1, std::atan2(std::sin(v1) * std::sin(v2), std::cos(v2)));
  } else if (f == E::c && s == E::A) {
    if (is_quarter(v1) && is_quarter(v2)) fail(ErrorCode::Degenerate, "c = A = pi/2 leaves b undetermined");
    double b0 = std::atan2(std::sin(v1) * std::cos(v2), std::cos(v1));
    if (b0 < 0) b0 += kPi;
    const double sa = std::sin(v1) * std::sin(v2);
    const double a0 = std::asin(std::min(1.0, sa));
    legs.emplace_back(a0, b0);
    legs.emplace_back(kPi - a0, b0);
  } else if (f == E::A && s == E::B) {
    const double ka = std::cos(v1) / std::sin(v2);
    const double kb = std::cos(v2) / std::sin(v1);
    if (std::abs(ka) > 1.0 + 1e-12 || std::abs(kb) > 1.0 + 1e-12) {
      fail(ErrorCode::Inconsistent, "no right triangle with these angles");
    }
    legs.emplace_back(std::acos(clamp_unit(ka)), std::acos(clamp_unit(kb)));
  } else {
    fail(ErrorCode::InvalidElements, "unsupported element pair");
  }

  auto value_of = [](const TriangleElements& e, E which) {
    switch (which) {
      case E::a: return e.a;
      case E::b: return e.b;
      case E::c: return e.c;
      case E::A: return e.A;
      case E::B: return e.B;
    }
    return 0.0;
  };

  std::vector<TriangleElements> sols;
  for (auto [la, lb] : legs) {
    if (!detail::in_open_range(la) || !detail::in_open_range(lb)) continue;
    TriangleElements e = solve_sas(la, lb, kHalfPi);
    if (std::abs(value_of(e, f) - v1) > 1e-8 || std::abs(value_of(e, s) - v2) > 1e-8) continue;
    if (mirrored) e = {e.b, e.a, e.c, e.B, e.A, e.C};
    sols.push_back(e);
  }
  if (sols.empty()) fail(ErrorCode::Inconsistent, "no right triangle fits the given elements");
  detail::dedupe(sols);
  std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) { return x.c < y.c; });
  return sols;
}

enum class SolveCase { SSS, SAS, ASA, SAA, SSA, AAA };

/// Dispatches on the case. Data layout per case:
///   SSS {a, b, c}   SAS {a, b, C}   ASA {A, c, B}
///   SSA {a, b, A}   SAA {a, A, B}   AAA {A, B, C}
inline std::vector<TriangleElements> solve(SolveCase kind, std::span<const double, 3> d) {
  switch (kind) {
    case SolveCase::SSS: return {solve_sss(d[0], d[1], d[2])};
    case SolveCase::SAS: return {solve_sas(d[0], d[1], d[2])};
    case SolveCase::ASA: return {solve_asa(d[0], d[1], d[2])};
    case SolveCase::SSA: return solve_ssa(d[0], d[1], d[2]);
    case SolveCase::SAA: return solve_saa(d[0], d[1], d[2]);
    case SolveCase::AAA: return {solve_aaa(d[0], d[1], d[2])};
  }
  return {};
}

enum class PlatonicSolid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

/// Dihedral angle of a regular solid, from the spherical polygon cut out
/// around one vertex: its sides are the face angles meeting at the vertex and
/// its interior angles are the dihedral angles.
inline double platonic_dihedral(PlatonicSolid solid) {
  int face_sides = 3, faces_at_vertex = 3;
  switch (solid) {
    case PlatonicSolid::Tetrahedron: face_sides = 3; faces_at_vertex = 3; break;
    case PlatonicSolid::Cube: face_sides = 4; faces_at_vertex = 3; break;
    case PlatonicSolid::Octahedron: face_sides = 3; faces_at_vertex = 4; break;
    case PlatonicSolid::Dodecahedron: face_sides = 5; faces_at_vertex = 3; break;
    case PlatonicSolid::Icosahedron: face_sides = 3; faces_at_vertex = 5; break;
  }
  const double face_angle = kPi * (1.0 - 2.0 / face_sides);
  if (faces_at_vertex == 3) {
    return solve_sss(face_angle, face_angle, face_angle).A;
  }
  // Regular polygon: right triangle between its center, an edge midpoint and
  // a vertex. Leg = half the edge, angle at the center = pi / n.
  const auto sols = solve_right(RightElement::a, face_angle / 2, RightElement::A, kPi / faces_at_vertex);
  for (const auto& s : sols) {
    if (s.c < kHalfPi) return 2.0 * s.B;
  }
  fail(ErrorCode::Inconsistent, "vertex figure has no convex realization");
}

}  // namespace sphgeom

#endif  // SPHGEOM_TRIG_HPP
