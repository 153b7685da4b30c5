#include "stress_shield/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace stress_shield::oracle {

std::vector<Vec3> fibonacci_sphere(std::size_t n) {
  std::vector<Vec3> out;
  out.reserve(n);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden_angle * static_cast<double>(i);
    out.push_back({r * std::cos(a), r * std::sin(a), z});
  }
  return out;
}

double magnitude_bound(const SymStress3& sigma, const MaterialParams& p) {
  // |tau(E)| grows like eps0 |E|^2, so beyond this radius ||sigma + tau||
  // exceeds ||sigma|| for every direction.
  const double s = frobenius_norm(sigma);
  return 2.0 * std::sqrt(s / p.eps0()) + 1e-6;
}

namespace {

double objective(const SymStress3& sigma, const Vec3& e, const MaterialParams& p) {
  return frobenius_norm_squared(total_stress(sigma, {e[0], e[1], e[2]}, p));
}

double inner(const SymStress3& a, const SymStress3& b) {
  return a.xx * b.xx + a.yy * b.yy + a.zz * b.zz +
         2.0 * (a.xy * b.xy + a.xz * b.xz + a.yz * b.yz);
}

constexpr std::size_t kMaxRefinePasses = 256;

}  // namespace

GridResult grid_min_unconstrained(const SymStress3& sigma, const MaterialParams& p,
                                  double mag_max, const GridOptions& opt) {
  if (opt.dir_steps < 8 || opt.mag_steps < 8) {
    throw std::invalid_argument("grid_min_unconstrained: steps must be >= 8");
  }
  if (!(mag_max > 0.0)) throw std::invalid_argument("grid_min_unconstrained: mag_max must be > 0");
  if (opt.refine_points < 3 || opt.refine_points % 2 == 0) {
    throw std::invalid_argument("grid_min_unconstrained: refine_points must be odd and >= 3");
  }

  // tau(a d) = a^2 tau(d), so along a ray the objective is the quartic
  // ||sigma||^2 + 2 a^2 <sigma, tau(d)> + a^4 ||tau(d)||^2.
  const double s2 = frobenius_norm_squared(sigma);
  const double mag_step = mag_max / static_cast<double>(opt.mag_steps);
  Vec3 best{0.0, 0.0, 0.0};
  double best_f = s2;
  for (const Vec3& d : fibonacci_sphere(opt.dir_steps)) {
    const SymStress3 t = maxwell_stress({d[0], d[1], d[2]}, p);
    const double c2 = 2.0 * inner(sigma, t);
    const double c4 = frobenius_norm_squared(t);
    for (std::size_t j = 1; j <= opt.mag_steps; ++j) {
      const double a = mag_step * static_cast<double>(j);
      const double a2 = a * a;
      const double f = s2 + c2 * a2 + c4 * a2 * a2;
      if (f < best_f) {
        best_f = f;
        best = {a * d[0], a * d[1], a * d[2]};
      }
    }
  }

  GridResult res;
  res.level_objectives.push_back(best_f);
  const double angular_spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(opt.dir_steps));
  double half_width = 1.5 * std::max(mag_step, angular_spacing * norm(best));
  const std::size_t m = opt.refine_points;
  const double half = static_cast<double>(m - 1) / 2.0;
  std::size_t level = 0;
  for (std::size_t pass = 0; level < opt.refine_levels && pass < kMaxRefinePasses; ++pass) {
    const double step = half_width / half;
    const Vec3 center = best;
    std::array<std::size_t, 3> at{m / 2, m / 2, m / 2};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
          const Vec3 e{center[0] + step * (static_cast<double>(i) - half),
                       center[1] + step * (static_cast<double>(j) - half),
                       center[2] + step * (static_cast<double>(k) - half)};
          const double f = objective(sigma, e, p);
          if (f < best_f) {
            best_f = f;
            best = e;
            at = {i, j, k};
          }
        }
      }
    }
    // A best point on the box face means the minimum may lie outside:
    // recenter at the same width instead of shrinking.
    const bool on_face = std::any_of(at.begin(), at.end(),
                                     [m](std::size_t a) { return a == 0 || a == m - 1; });
    if (on_face) continue;
    res.level_objectives.push_back(best_f);
    half_width = 2.0 * step;
    ++level;
  }
  res.best = {best[0], best[1], best[2]};
  res.objective = best_f;
  return res;
}

double evaluate_terms(std::span<const LinearTerm> terms, double x) {
  double sum = 0.0;
  for (const LinearTerm& t : terms) {
    const double v = t.offset + t.slope * x;
    sum += v * v;
  }
  return sum;
}

ScanResult scan_min_lambda(std::span<const LinearTerm> terms, double lo, double hi,
                           std::size_t steps) {
  if (!(lo <= hi)) throw std::invalid_argument("scan_min_lambda: need lo <= hi");
  if (steps < 100) throw std::invalid_argument("scan_min_lambda: need steps >= 100");

  auto scan = [&](double a, double b, double& best_x, double& best_f) {
    const double h = (b - a) / static_cast<double>(steps);
    for (std::size_t i = 0; i <= steps; ++i) {
      const double x = i == steps ? b : a + h * static_cast<double>(i);
      const double f = evaluate_terms(terms, x);
      if (f < best_f) {
        best_f = f;
        best_x = x;
      }
    }
    return h;
  };

  ScanResult r;
  r.lambda_m = lo;
  r.objective = std::numeric_limits<double>::infinity();
  const double h = scan(lo, hi, r.lambda_m, r.objective);
  r.coarse_objective = r.objective;
  if (h > 0.0) {
    scan(std::max(lo, r.lambda_m - h), std::min(hi, r.lambda_m + h), r.lambda_m, r.objective);
  }
  return r;
}

PlaneScanResult scan_min_plane(double l1, double l2, double hi, std::size_t steps) {
  PlaneScanResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int sign : {1, -1}) {
    const std::array<LinearTerm, 2> terms{{{l1, static_cast<double>(sign)}, {l2, -1.0}}};
    const ScanResult r = scan_min_lambda(terms, 0.0, hi, steps);
    if (r.objective < best.objective) {
      best = {r.lambda_m, sign, r.objective};
    }
  }
  return best;
}

ConstrainedScanResult scan_min_constrained(const Vec3& mu, SignConstraint c, std::size_t steps) {
  ConstrainedScanResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    std::array<LinearTerm, 3> terms;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 3; ++i) {
      const double slope = i == k ? 1.0 : -1.0;
      terms[i] = {mu[i], slope};
      // mu_i + slope * x >= 0 (tensile) or <= 0 (compressive).
      const double root = -mu[i] / slope;
      const bool grows = slope > 0.0;
      const bool lower = (c == SignConstraint::kTensile) == grows;
      if (lower) {
        lo = std::max(lo, root);
      } else {
        hi = std::min(hi, root);
      }
    }
    if (lo > hi) continue;
    const ScanResult r = scan_min_lambda(terms, lo, hi, steps);
    if (r.objective < best.objective) {
      best = {true, k, r.lambda_m, r.objective};
    }
  }
  return best;
}

}  // namespace stress_shield::oracle
