#ifndef SPHGEOM_SAMPLING_HPP
#define SPHGEOM_SAMPLING_HPP

// Seeded random generators for property checks.

#include <random>

#include "sphgeom/core.hpp"

namespace sphgeom {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Uniformly distributed point on the sphere.
inline SPoint random_point(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v(n(rng), n(rng), n(rng));
    if (v.norm() > 1e-6) return SPoint(v);
  }
}

/// Point at angular distance `d` from p in a random direction.
inline SPoint random_point_at(Rng& rng, const SPoint& p, double d) {
  auto [e1, e2] = orthonormal_basis(p.vec());
  const double t = uniform(rng, 0.0, kTwoPi);
  return travel(p, std::cos(t) * e1 + std::sin(t) * e2, d);
}

/// Uniformly distributed rotation.
inline Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace sphgeom

#endif  // SPHGEOM_SAMPLING_HPP
