#include "stress_shield/plane_stress.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stress_shield {

double frobenius_norm(const SymStress2& t) {
  return std::sqrt(t.xx * t.xx + t.yy * t.yy + 2.0 * t.xy * t.xy);
}

EigenSystem2 eigen_decompose(const SymStress2& s) {
  const double mean = 0.5 * (s.xx + s.yy);
  const double half_diff = 0.5 * (s.xx - s.yy);
  const double radius = std::hypot(half_diff, s.xy);
  EigenSystem2 out;
  out.values = {mean - radius, mean + radius};
  if (s.xy == 0.0) {
    // Exact axes; atan2 would leave cos(pi/2) ~ 6e-17 residue.
    if (s.xx >= s.yy) {
      out.vectors[1] = {1.0, 0.0};
      out.vectors[0] = {0.0, 1.0};
    } else {
      out.vectors[1] = {0.0, 1.0};
      out.vectors[0] = {-1.0, 0.0};
    }
    return out;
  }
  // Angle of the major principal axis.
  const double theta = 0.5 * std::atan2(s.xy, half_diff);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  out.vectors[1] = {c, sn};
  out.vectors[0] = {-sn, c};
  return out;
}

namespace {

SymStress2 from_principal(const EigenSystem2& e, double a, double b) {
  const auto& u = e.vectors[0];
  const auto& v = e.vectors[1];
  return {a * u[0] * u[0] + b * v[0] * v[0],
          a * u[1] * u[1] + b * v[1] * v[1],
          a * u[0] * u[1] + b * v[0] * v[1]};
}

}  // namespace

PlaneSolution solve_plane(const SymStress2& sigma) {
  PlaneSolution sol;
  const double sigma_norm = frobenius_norm(sigma);
  if (sigma_norm == 0.0) {
    sol.e_axis = PlaneFieldAxis::kOutOfPlane;
    sol.direction = {0.0, 0.0, 1.0};
    sol.tau_sign = -1;
    return sol;
  }
  const EigenSystem2 eig = eigen_decompose(sigma);
  const double l1 = eig.values[0];
  const double l2 = eig.values[1];
  sol.principal = {l1, l2};

  double t1 = 0.0;
  double t2 = 0.0;
  if (l1 <= 0.0) {
    sol.case_id = l2 <= 0.0 ? 1 : 2;
    sol.lambda_m = 0.5 * (l2 - l1);
    sol.tau_sign = 1;
    sol.e_axis = PlaneFieldAxis::kInPlane;
    double dx = eig.vectors[0][0];
    double dy = eig.vectors[0][1];
    if (dx < -1e-12 || (std::abs(dx) <= 1e-12 && dy < 0.0)) {
      dx = -dx;
      dy = -dy;
    }
    sol.direction = {dx + 0.0, dy + 0.0, 0.0};
    t1 = t2 = 0.5 * (l1 + l2);
  } else {
    sol.case_id = 3;
    sol.lambda_m = 0.5 * (l1 + l2);
    sol.tau_sign = -1;
    sol.e_axis = PlaneFieldAxis::kOutOfPlane;
    sol.direction = {0.0, 0.0, 1.0};
    t1 = 0.5 * (l1 - l2);
    t2 = 0.5 * (l2 - l1);
  }
  sol.total = from_principal(eig, t1, t2);
  sol.sigma_rel = std::hypot(t1, t2) / sigma_norm;
  return sol;
}

double sigma_rel_phi(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(phi >= 0.0 && phi <= two_pi)) {
    throw std::out_of_range("sigma_rel_phi: phi must lie in [0, 2 pi]");
  }
  constexpr double half_sqrt2 = std::numbers::sqrt2 / 2.0;
  if (phi <= 0.5 * std::numbers::pi) {
    return half_sqrt2 * std::sqrt(std::max(0.0, 1.0 - std::sin(2.0 * phi)));
  }
  return half_sqrt2 * std::abs(std::sin(phi) + std::cos(phi));
}

double analytic_plane_mean() {
  return (6.0 - 2.0 * std::numbers::sqrt2) / (2.0 * std::numbers::pi);
}

PlaneMean mean_plane_reduction(std::size_t points) {
  if (points < 2) throw std::invalid_argument("mean_plane_reduction: need >= 2 points");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double h = two_pi / static_cast<double>(points - 1);
  double sum = 0.5 * (sigma_rel_phi(0.0) + sigma_rel_phi(two_pi));
  for (std::size_t i = 1; i + 1 < points; ++i) {
    sum += sigma_rel_phi(h * static_cast<double>(i));
  }
  return {sum * h / two_pi, analytic_plane_mean()};
}

std::vector<PlaneMapRow> plane_map(std::size_t resolution, double lo, double hi) {
  if (resolution < 2) throw std::invalid_argument("plane_map: resolution must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("plane_map: range must satisfy lo < hi");
  std::vector<PlaneMapRow> rows;
  rows.reserve(resolution * resolution);
  const double step = (hi - lo) / static_cast<double>(resolution - 1);
  for (std::size_t j = 0; j < resolution; ++j) {
    const double l2 = j + 1 == resolution ? hi : lo + step * static_cast<double>(j);
    for (std::size_t i = 0; i < resolution; ++i) {
      const double l1 = i + 1 == resolution ? hi : lo + step * static_cast<double>(i);
      rows.push_back({l1, l2, solve_plane({l1, l2, 0.0}).sigma_rel});
    }
  }
  return rows;
}

}  // namespace stress_shield
