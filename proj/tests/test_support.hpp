#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "stress_shield/tensor.hpp"

namespace stress_shield::testing {

// Seeded generators for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  SymStress3 tensor(double scale = 1.0) {
    return {scale * uniform(-1, 1), scale * uniform(-1, 1), scale * uniform(-1, 1),
            scale * uniform(-1, 1), scale * uniform(-1, 1), scale * uniform(-1, 1)};
  }

  Vec3 unit_vector() {
    const double z = uniform(-1, 1);
    const double a = uniform(0, 2 * std::numbers::pi);
    const double r = std::sqrt(1 - z * z);
    return {r * std::cos(a), r * std::sin(a), z};
  }

  Mat3 rotation() { return rotation_about(unit_vector(), uniform(0, 2 * std::numbers::pi)); }

  // diag(l) rotated into a random frame.
  SymStress3 with_eigenvalues(const Vec3& l) {
    return SymStress3::diag(l[0], l[1], l[2]).rotated(rotation());
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const SymStress3& a, const SymStress3& b) {
  const SymStress3 d = a - b;
  return std::max({std::abs(d.xx), std::abs(d.yy), std::abs(d.zz), std::abs(d.xy),
                   std::abs(d.xz), std::abs(d.yz)});
}

// ||sigma + tau(E)||^2 written out entry by entry from
// tau = eps0 (epsr E E^T - |E|^2 / 2 I).
inline double direct_objective(const SymStress3& s, const Vec3& e, double eps0 = 1.0,
                               double epsr = 1.0) {
  const double e2 = e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double tau = eps0 * (epsr * e[i] * e[j] - (i == j ? 0.5 * e2 : 0.0));
      const double t = s(i, j) + tau;
      sum += t * t;
    }
  }
  return sum;
}

// Central-difference gradient of direct_objective.
inline Vec3 fd_gradient(const SymStress3& s, const Vec3& e, double h) {
  Vec3 g{};
  for (int k = 0; k < 3; ++k) {
    Vec3 a = e;
    Vec3 b = e;
    a[k] += h;
    b[k] -= h;
    g[k] = (direct_objective(s, a) - direct_objective(s, b)) / (2 * h);
  }
  return g;
}

inline Vec3 sorted(Vec3 v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace stress_shield::testing
