#include "stress_shield/unconstrained.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stress_shield {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSolved: return "solved";
    case SolveStatus::kNoRealSolution: return "no_real_solution";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

Vec3 stationarity_residual(const SymStress3& sigma, const EField& e,
                           const MaterialParams& p) {
  const double er = p.epsr();
  const Vec3 ev = e.vec();
  const Vec3 se = mat_vec(sigma, ev);
  const double cubic = p.eps0() * e.magnitude_squared() * (2.0 * er * er - 2.0 * er + 1.5);
  const double tr = sigma.trace();
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    r[i] = cubic * ev[i] + 2.0 * er * se[i] - tr * ev[i];
  }
  return r;
}

FieldMagnitude alpha_from_eigenvalue(const SymStress3& sigma, double lambda_i,
                                     const MaterialParams& p) {
  const double er = p.epsr();
  FieldMagnitude out;
  out.report.discriminant = sigma.trace() - 2.0 * er * lambda_i;
  out.report.feasible = out.report.discriminant >= 0.0;
  if (out.report.feasible) {
    out.alpha = std::sqrt(out.report.discriminant /
                          (2.0 * p.eps0() * (er * er - er + 0.75)));
  }
  return out;
}

Vec3 maxwell_eigen_magnitudes(const Vec3& l) {
  return {(-l[0] + l[1] + l[2]) / 3.0,
          (l[0] - l[1] + l[2]) / 3.0,
          (l[0] + l[1] - l[2]) / 3.0};
}

double sigma_rel_for_choice(const Vec3& l, std::size_t choice) {
  const double den = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
  if (den == 0.0) {
    throw std::invalid_argument("sigma_rel_for_choice: all eigenvalues are zero");
  }
  double num = 0.0;
  switch (choice) {
    case 0: num = l[0] * l[1] + l[0] * l[2] - l[1] * l[2]; break;
    case 1: num = l[0] * l[1] - l[0] * l[2] + l[1] * l[2]; break;
    case 2: num = -l[0] * l[1] + l[0] * l[2] + l[1] * l[2]; break;
    default: throw std::invalid_argument("sigma_rel_for_choice: choice must be 0, 1 or 2");
  }
  return std::sqrt(std::max(0.0, 2.0 / 3.0 * (1.0 + num / den)));
}

ReductionSolution solve_unconstrained(const SymStress3& sigma, const MaterialParams& p) {
  if (p.epsr() != 1.0) {
    throw std::invalid_argument("solve_unconstrained supports epsr = 1 only");
  }
  ReductionSolution sol;
  sol.total = sigma;
  const double sigma_norm = frobenius_norm(sigma);
  if (sigma_norm == 0.0) {
    sol.case_label = "zero_stress";
    sol.sigma_rel = 0.0;
    return sol;
  }

  const EigenSystem3 eig = eigen_decompose(sigma);
  const double lm1 = maxwell_eigen_magnitudes(eig.values)[0];
  const double tol = kBoundaryTolerance * std::max(1.0, sigma_norm);
  sol.eigen_choice = 0;
  sol.direction = canonical_sign(eig.vectors[0]);

  if (lm1 < -tol) {
    sol.status = SolveStatus::kNoRealSolution;
    sol.case_label = "no_real_solution";
    sol.sigma_rel = 1.0;
    return sol;
  }

  sol.lambda_m = std::max(0.0, lm1);
  sol.alpha = std::sqrt(2.0 * sol.lambda_m / p.eps0());
  sol.total = total_stress(sigma, sol.field(), p);
  sol.sigma_rel = frobenius_norm(sol.total) / sigma_norm;
  sol.case_label = sol.lambda_m == 0.0 ? "smallest_eigenvalue_boundary" : "smallest_eigenvalue";
  return sol;
}

}  // namespace stress_shield
