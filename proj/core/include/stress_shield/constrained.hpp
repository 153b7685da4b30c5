#pragma once

#include <array>
#include <cstddef>

#include "stress_shield/solution.hpp"
#include "stress_shield/tensor.hpp"

namespace stress_shield {

/// Which total-stress eigenvalue sign is allowed to remain.
enum class SignConstraint {
  kTensile,      // all total principal stresses >= 0
  kCompressive,  // all total principal stresses <= 0
};

/// What the compressive solver does in the all-non-positive case when the
/// interior candidate (l1 - l2 - l3) / 3 is negative, i.e. not a physical
/// field.
enum class CompressiveFallback {
  /// Activate the upper bound lambda_m = l1. This gives the reference
  /// sphere average of about 0.87, but it is not the constrained minimum
  /// there (it can raise sigma_rel above 1).
  kUpperBound,
  /// Activate the physical bound lambda_m = 0 (no field), which is the
  /// constrained minimum.
  kFeasibleOptimum,
};

struct SignPattern {
  int n_pos = 0;
  int n_zero = 0;
  int n_neg = 0;
};

/// Sign region of the eigenvalue triple, each with its own closed forms.
enum class SignRegion {
  kTensileOneNegative,       // diag(l1, l2, -l3), l1 >= l2 >= 0, l3 > 0
  kTensileNonNegative,       // diag(l1, l2, l3),  l1 >= l2 >= l3 >= 0
  kTensileInfeasible,        // two or three negative eigenvalues
  kCompressiveTwoPositive,   // diag(l1, l2, -l3), l1 >= l2 > 0, l3 >= 0
  kCompressiveOnePositive,   // diag(l1, -l2, -l3), l1 > 0, l3 >= l2 >= 0
  kCompressiveNonPositive,   // diag(-l1, -l2, -l3), l1 >= l2 >= l3 >= 0
  kCompressiveInfeasible,    // three positive eigenvalues
};

const char* to_string(SignRegion r);

/// Relabeling of the ascending eigen-system into the sign case's own
/// convention. Case label k (0-based) refers to ascending eigen index
/// `axes[k]`; `magnitudes[k]` is |lambda| for that axis and `signs[k]`
/// its sign in the case's diagonal form.
struct CanonicalForm {
  SignRegion region = SignRegion::kTensileNonNegative;
  std::array<std::size_t, 3> axes{0, 1, 2};
  Vec3 magnitudes{};
  std::array<int, 3> signs{1, 1, 1};
  /// Case label (0-based) of the axis that receives +lambda_m.
  std::size_t field_label = 2;
};

struct Classification {
  SignPattern pattern;
  EigenSystem3 eigen;
  double tol = 0.0;

  CanonicalForm canonical(SignConstraint c) const;
};

/// Eigen-decomposes sigma and counts eigenvalue signs, treating
/// |lambda| <= tol as zero. Throws std::invalid_argument for tol < 0.
Classification classify(const SymStress3& sigma, double tol);

/// Default zero tolerance: 1e-12 * max(1, ||sigma||).
double default_sign_tolerance(const SymStress3& sigma);

/// Minimizes ||sigma + tau||^2 over lambda_m subject to all total principal
/// stresses being >= 0. E lies along a principal axis of sigma. Returns
/// kInfeasible when at least two eigenvalues are negative. epsr != 1 throws
/// std::invalid_argument.
ReductionSolution solve_tensile(const SymStress3& sigma, const MaterialParams& p = {});

/// Same for all total principal stresses <= 0. Returns kInfeasible when
/// all three eigenvalues are positive.
ReductionSolution solve_compressive(
    const SymStress3& sigma, const MaterialParams& p = {},
    CompressiveFallback fallback = CompressiveFallback::kUpperBound);

ReductionSolution solve_constrained(
    const SymStress3& sigma, SignConstraint c, const MaterialParams& p = {},
    CompressiveFallback fallback = CompressiveFallback::kUpperBound);

/// Principal-frame objective sum_k (s_k m_k + t_k lambda_m)^2 where t_k is
/// +1 on the field axis and -1 elsewhere.
double case_objective(const CanonicalForm& form, double lambda_m);

}  // namespace stress_shield
