#pragma once

#include <cstddef>
#include <optional>

#include "stress_shield/solution.hpp"
#include "stress_shield/tensor.hpp"

namespace stress_shield {

/// Gradient of ||sigma + tau(E)||^2 with respect to E, divided by 2 eps0:
///   eps0 |E|^2 E (2 epsr^2 - 2 epsr + 3/2) + 2 epsr sigma.E - tr(sigma) E.
/// Vanishes exactly at the critical points of the unconstrained problem.
Vec3 stationarity_residual(const SymStress3& sigma, const EField& e,
                           const MaterialParams& p);

struct FeasibilityReport {
  bool feasible = false;
  /// tr(sigma) - 2 epsr lambda_i
  double discriminant = 0.0;
};

struct FieldMagnitude {
  FeasibilityReport report;
  std::optional<double> alpha;
};

/// |E| for a field aligned with the eigenvector of `lambda_i`. Holds for
/// general epsr; no alpha is produced when the radicand is negative.
FieldMagnitude alpha_from_eigenvalue(const SymStress3& sigma, double lambda_i,
                                     const MaterialParams& p);

/// Maxwell eigenvalue magnitudes for each of the three eigenvector choices
/// (epsr = 1). `lambdas` must be ascending. Negative entries mark choices
/// with no real field.
Vec3 maxwell_eigen_magnitudes(const Vec3& lambdas);

/// Closed-form ||sigma + tau|| / ||sigma|| when E follows the eigenvector
/// of lambdas[choice] (0-based, ascending). Throws std::invalid_argument
/// for an all-zero triple or choice > 2.
double sigma_rel_for_choice(const Vec3& lambdas, std::size_t choice);

/// Global minimizer of ||sigma + tau(E)||^2 over E (epsr = 1 only; other
/// values throw std::invalid_argument). Returns status kNoRealSolution with
/// E = 0 and sigma_rel = 1 when the smallest-eigenvalue choice has no real
/// field.
ReductionSolution solve_unconstrained(const SymStress3& sigma,
                                      const MaterialParams& p = {});

/// Relative tolerance used to absorb rounding at the feasibility boundary.
inline constexpr double kBoundaryTolerance = 1e-12;

}  // namespace stress_shield
