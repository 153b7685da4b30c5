#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stress_shield/constrained.hpp"
#include "stress_shield/tensor.hpp"

// Brute-force minimizers used to validate the closed forms. Nothing in
// here uses eigenvalue formulas for the optimum; the searches only evaluate
// the objective.
namespace stress_shield::oracle {

/// Deterministic Fibonacci lattice of n unit vectors covering the sphere.
std::vector<Vec3> fibonacci_sphere(std::size_t n);

struct GridOptions {
  std::size_t dir_steps = 2048;
  std::size_t mag_steps = 512;
  std::size_t refine_levels = 6;
  /// Points per axis of the Cartesian refinement box (odd, so the
  /// current best stays on the grid).
  std::size_t refine_points = 17;
};

struct GridResult {
  EField best;
  double objective = 0.0;
  /// Objective after the lattice scan (front) and after each refinement level.
  std::vector<double> level_objectives;
};

/// Scans ||sigma + tau(E)||^2 over directions x magnitudes in [0, mag_max],
/// then shrinks a Cartesian box around the best point `refine_levels`
/// times. A box whose best point lands on a face is recentered without
/// shrinking (bounded number of passes). Throws std::invalid_argument for steps < 8 or mag_max <= 0.
GridResult grid_min_unconstrained(const SymStress3& sigma, const MaterialParams& p,
                                  double mag_max, const GridOptions& options = {});

/// A conservative |E| bound for the unconstrained optimum, from norms only.
double magnitude_bound(const SymStress3& sigma, const MaterialParams& p);

/// One axis of a principal-frame objective: (offset + slope * lambda_m)^2.
struct LinearTerm {
  double offset = 0.0;
  double slope = 0.0;
};

double evaluate_terms(std::span<const LinearTerm> terms, double lambda_m);

struct ScanResult {
  double lambda_m = 0.0;
  double objective = 0.0;
  /// Objective before the refinement pass.
  double coarse_objective = 0.0;
};

/// Dense scan of sum (offset + slope * x)^2 over [lo, hi] with `steps`
/// intervals and one refinement pass around the best node. Throws
/// std::invalid_argument for lo > hi or steps < 100.
ScanResult scan_min_lambda(std::span<const LinearTerm> terms, double lo, double hi,
                           std::size_t steps = 4096);

struct PlaneScanResult {
  double lambda_m = 0.0;
  int tau_sign = 1;
  double objective = 0.0;
};

/// Principal values l1 <= l2 with Maxwell eigenvalues (s * lambda_m,
/// -lambda_m), scanned over lambda_m in [0, hi] for s = +1 and s = -1.
PlaneScanResult scan_min_plane(double l1, double l2, double hi, std::size_t steps = 4096);

struct ConstrainedScanResult {
  bool feasible = false;
  /// Index into the eigenvalue triple of the axis carrying +lambda_m.
  std::size_t axis = 0;
  double lambda_m = 0.0;
  double objective = 0.0;
};

/// Tries the field on every principal axis, scans lambda_m over the
/// interval where all totals keep the required sign (and lambda_m >= 0),
/// and keeps the best. Infeasible when every interval is empty.
ConstrainedScanResult scan_min_constrained(const Vec3& eigenvalues, SignConstraint c,
                                           std::size_t steps = 4096);

}  // namespace stress_shield::oracle
