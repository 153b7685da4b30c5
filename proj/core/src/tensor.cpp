#include "stress_shield/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stress_shield {

MaterialParams::MaterialParams(double eps0, double epsr) : eps0_(eps0), epsr_(epsr) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
    throw std::invalid_argument("eps0 must be positive and finite");
  }
  if (!(epsr >= 1.0) || !std::isfinite(epsr)) {
    throw std::invalid_argument("epsr must be >= 1 and finite");
  }
}

SymStress3 SymStress3::from_matrix(const Mat3& m) {
  return {m[0][0],
          m[1][1],
          m[2][2],
          0.5 * (m[0][1] + m[1][0]),
          0.5 * (m[0][2] + m[2][0]),
          0.5 * (m[1][2] + m[2][1])};
}

double SymStress3::operator()(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  switch (i * 3 + j) {
    case 0: return xx;
    case 1: return xy;
    case 2: return xz;
    case 4: return yy;
    case 5: return yz;
    case 8: return zz;
    default: throw std::out_of_range("SymStress3 index out of range");
  }
}

Mat3 SymStress3::matrix() const {
  return {{{xx, xy, xz}, {xy, yy, yz}, {xz, yz, zz}}};
}

bool SymStress3::is_finite() const {
  return std::isfinite(xx) && std::isfinite(yy) && std::isfinite(zz) &&
         std::isfinite(xy) && std::isfinite(xz) && std::isfinite(yz);
}

SymStress3 SymStress3::rotated(const Mat3& r) const {
  const Mat3 a = matrix();
  Mat3 ra{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) ra[i][j] += r[i][k] * a[k][j];
  Mat3 out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) out[i][j] += ra[i][k] * r[j][k];
  return from_matrix(out);
}

double EField::magnitude() const { return std::sqrt(magnitude_squared()); }

SymStress3 EigenSystem3::reconstruct() const {
  SymStress3 s;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& n = vectors[i];
    const double l = values[i];
    s.xx += l * n[0] * n[0];
    s.yy += l * n[1] * n[1];
    s.zz += l * n[2] * n[2];
    s.xy += l * n[0] * n[1];
    s.xz += l * n[0] * n[2];
    s.yz += l * n[1] * n[2];
  }
  return s;
}

SymStress3 maxwell_stress(const EField& e, const MaterialParams& p) {
  const double e0 = p.eps0();
  const double er = p.epsr();
  const double half_e2 = 0.5 * e.magnitude_squared();
  return {e0 * (er * e.ex * e.ex - half_e2),
          e0 * (er * e.ey * e.ey - half_e2),
          e0 * (er * e.ez * e.ez - half_e2),
          e0 * er * e.ex * e.ey,
          e0 * er * e.ex * e.ez,
          e0 * er * e.ey * e.ez};
}

SymStress3 total_stress(const SymStress3& sigma, const EField& e,
                        const MaterialParams& p) {
  return sigma + maxwell_stress(e, p);
}

double frobenius_norm_squared(const SymStress3& t) {
  return t.xx * t.xx + t.yy * t.yy + t.zz * t.zz +
         2.0 * (t.xy * t.xy + t.xz * t.xz + t.yz * t.yz);
}

double frobenius_norm(const SymStress3& t) {
  return std::sqrt(frobenius_norm_squared(t));
}

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 mat_vec(const SymStress3& s, const Vec3& v) {
  return {s.xx * v[0] + s.xy * v[1] + s.xz * v[2],
          s.xy * v[0] + s.yy * v[1] + s.yz * v[2],
          s.xz * v[0] + s.yz * v[1] + s.zz * v[2]};
}

Vec3 canonical_sign(const Vec3& v, double tol) {
  for (double c : v) {
    if (std::abs(c) > tol) {
      return c > 0.0 ? v : Vec3{-v[0], -v[1], -v[2]};
    }
  }
  return v;
}

Mat3 rotation_about(const Vec3& u, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  return {{{t * u[0] * u[0] + c, t * u[0] * u[1] - s * u[2], t * u[0] * u[2] + s * u[1]},
           {t * u[0] * u[1] + s * u[2], t * u[1] * u[1] + c, t * u[1] * u[2] - s * u[0]},
           {t * u[0] * u[2] - s * u[1], t * u[1] * u[2] + s * u[0], t * u[2] * u[2] + c}}};
}

namespace {

double off_diagonal_mass(const Mat3& a) {
  return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}

// One Jacobi rotation zeroing a[p][q]; v accumulates the rotations column-wise.
void rotate(Mat3& a, Mat3& v, std::size_t p, std::size_t q) {
  const double apq = a[p][q];
  if (apq == 0.0) return;
  const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < 3; ++k) {
    const double akp = a[k][p];
    const double akq = a[k][q];
    a[k][p] = c * akp - s * akq;
    a[k][q] = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const double apk = a[p][k];
    const double aqk = a[q][k];
    a[p][k] = c * apk - s * aqk;
    a[q][k] = s * apk + c * aqk;
  }
  a[p][q] = a[q][p] = 0.0;

  for (std::size_t k = 0; k < 3; ++k) {
    const double vkp = v[k][p];
    const double vkq = v[k][q];
    v[k][p] = c * vkp - s * vkq;
    v[k][q] = s * vkp + c * vkq;
  }
}

}  // namespace

EigenSystem3 eigen_decompose(const SymStress3& sigma) {
  if (!sigma.is_finite()) {
    throw std::invalid_argument("eigen_decompose: non-finite tensor entry");
  }
  Mat3 a = sigma.matrix();
  Mat3 v{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
  const double threshold = kJacobiRelativeTolerance * frobenius_norm(sigma);

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    rotate(a, v, 0, 1);
    rotate(a, v, 0, 2);
    rotate(a, v, 1, 2);
  }
  if (!converged) {
    throw std::runtime_error("eigen_decompose: Jacobi iteration did not converge");
  }

  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i][i] < a[j][j]; });

  EigenSystem3 out;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t col = order[k];
    out.values[k] = a[col][col];
    out.vectors[k] = {v[0][col], v[1][col], v[2][col]};
  }

  // Modified Gram-Schmidt keeps repeated-eigenvalue bases exactly orthonormal.
  for (std::size_t k = 0; k < 3; ++k) {
    Vec3& n = out.vectors[k];
    for (std::size_t j = 0; j < k; ++j) {
      const double d = dot(n, out.vectors[j]);
      for (std::size_t c = 0; c < 3; ++c) n[c] -= d * out.vectors[j][c];
    }
    const double len = norm(n);
    for (double& c : n) c /= len;
  }
  return out;
}

}  // namespace stress_shield
