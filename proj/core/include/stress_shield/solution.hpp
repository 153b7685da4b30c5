#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stress_shield/tensor.hpp"

namespace stress_shield {

enum class SolveStatus {
  kSolved,
  /// Unconstrained problem whose minimizing field would be imaginary.
  kNoRealSolution,
  /// Sign-constrained problem that no field can satisfy.
  kInfeasible,
};

const char* to_string(SolveStatus s);

/// A closed-form candidate for the Maxwell eigenvalue magnitude that a
/// constrained solver considered, with the validity inequalities it was
/// checked against.
struct KktCandidate {
  int case_id = 0;
  double lambda_m = 0.0;
  double objective = 0.0;
  bool valid = false;
  /// Human-readable forms of the inequalities that failed, empty if valid.
  std::vector<std::string> failed_inequalities;
};

struct KktDiagnostics {
  /// KKT branch that produced the solution: 1 = no active constraint,
  /// 2/3 = one bound active, 4 = both bounds coincide.
  int case_id = 0;
  bool lower_bound_active = false;
  bool upper_bound_active = false;
  /// ||sigma + tau||^2 at the returned lambda_m.
  double lagrangian_value = 0.0;
  /// Eigenvalue magnitudes relabeled into the sign-case convention
  /// (descending magnitude within each sign group).
  Vec3 case_lambdas{};
  /// Admissible lambda_m interval implied by the sign constraint for the
  /// selected field axis; empty when lower > upper.
  double interval_lower = 0.0;
  double interval_upper = 0.0;
  /// False when the case formulas were applied outside their
  /// precondition and the total stress violates the sign constraint.
  bool constraint_satisfied = true;
  std::vector<KktCandidate> candidates;
};

struct ReductionSolution {
  SolveStatus status = SolveStatus::kSolved;
  double lambda_m = 0.0;
  /// Unit direction of E (first significant component positive).
  Vec3 direction{1.0, 0.0, 0.0};
  double alpha = 0.0;
  /// Ascending eigenvalue index of the principal axis that carries E.
  std::size_t eigen_choice = 0;
  SymStress3 total;
  /// ||total|| / ||sigma||; 1 for NoRealSolution, NaN for Infeasible.
  double sigma_rel = 0.0;
  std::string case_label;
  std::optional<KktDiagnostics> kkt;

  bool solved() const { return status == SolveStatus::kSolved; }
  EField field() const { return EField::along(direction, alpha); }
};

}  // namespace stress_shield
