#pragma once

#include <array>
#include <cstddef>

namespace stress_shield {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Vacuum permittivity in SI units (F/m).
inline constexpr double kVacuumPermittivitySI = 8.854e-12;

/// Dielectric constants of the bulk material. The default is the
/// nondimensional setting eps0 = 1, epsr = 1.
class MaterialParams {
 public:
  MaterialParams() = default;
  /// Throws std::invalid_argument unless eps0 > 0 and epsr >= 1.
  MaterialParams(double eps0, double epsr);

  static MaterialParams physical(double epsr = 1.0) {
    return MaterialParams(kVacuumPermittivitySI, epsr);
  }

  double eps0() const { return eps0_; }
  double epsr() const { return epsr_; }

 private:
  double eps0_ = 1.0;
  double epsr_ = 1.0;
};

/// Symmetric 3x3 stress tensor. Off-diagonals are stored once, so the
/// tensor is symmetric by construction.
struct SymStress3 {
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;
  double xy = 0.0;
  double xz = 0.0;
  double yz = 0.0;

  static constexpr SymStress3 diag(double a, double b, double c) {
    return {a, b, c, 0.0, 0.0, 0.0};
  }
  /// Symmetric part of an arbitrary 3x3 matrix.
  static SymStress3 from_matrix(const Mat3& m);

  double operator()(std::size_t i, std::size_t j) const;
  Mat3 matrix() const;
  double trace() const { return xx + yy + zz; }
  bool is_finite() const;

  /// R * this * R^T.
  SymStress3 rotated(const Mat3& r) const;

  friend SymStress3 operator+(const SymStress3& a, const SymStress3& b) {
    return {a.xx + b.xx, a.yy + b.yy, a.zz + b.zz,
            a.xy + b.xy, a.xz + b.xz, a.yz + b.yz};
  }
  friend SymStress3 operator-(const SymStress3& a, const SymStress3& b) {
    return {a.xx - b.xx, a.yy - b.yy, a.zz - b.zz,
            a.xy - b.xy, a.xz - b.xz, a.yz - b.yz};
  }
  friend SymStress3 operator*(double s, const SymStress3& a) {
    return {s * a.xx, s * a.yy, s * a.zz, s * a.xy, s * a.xz, s * a.yz};
  }
  friend bool operator==(const SymStress3&, const SymStress3&) = default;
};

/// Electric field vector.
struct EField {
  double ex = 0.0;
  double ey = 0.0;
  double ez = 0.0;

  static EField along(const Vec3& unit, double magnitude) {
    return {magnitude * unit[0], magnitude * unit[1], magnitude * unit[2]};
  }

  Vec3 vec() const { return {ex, ey, ez}; }
  double magnitude() const;
  double magnitude_squared() const { return ex * ex + ey * ey + ez * ez; }
};

/// Eigenvalues in ascending order; `vectors[i]` is the unit eigenvector
/// paired with `values[i]`.
struct EigenSystem3 {
  Vec3 values{};
  std::array<Vec3, 3> vectors{};

  /// sum_i values[i] * vectors[i] (x) vectors[i]
  SymStress3 reconstruct() const;
};

SymStress3 maxwell_stress(const EField& e, const MaterialParams& p);
SymStress3 total_stress(const SymStress3& sigma, const EField& e,
                        const MaterialParams& p);

double frobenius_norm(const SymStress3& t);
/// Sum of squares of all nine entries.
double frobenius_norm_squared(const SymStress3& t);

/// Cyclic Jacobi eigendecomposition. Converges when the off-diagonal
/// Frobenius mass drops below 1e-14 * ||sigma||; throws std::runtime_error
/// if that takes more than 64 sweeps and std::invalid_argument for
/// non-finite input.
EigenSystem3 eigen_decompose(const SymStress3& sigma);

inline constexpr int kJacobiMaxSweeps = 64;
inline constexpr double kJacobiRelativeTolerance = 1e-14;

// Small vector helpers shared across modules.
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 mat_vec(const SymStress3& s, const Vec3& v);

/// Flips the sign so the first component with |c| > tol is positive.
Vec3 canonical_sign(const Vec3& v, double tol = 1e-12);

/// Rotation matrix about a unit axis.
Mat3 rotation_about(const Vec3& unit_axis, double angle);

}  // namespace stress_shield
