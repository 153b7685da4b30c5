#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace stress_shield {

/// In-plane stress of a thin sheet; symmetric by construction.
struct SymStress2 {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;

  friend bool operator==(const SymStress2&, const SymStress2&) = default;
};

double frobenius_norm(const SymStress2& t);

struct EigenSystem2 {
  /// Ascending.
  std::array<double, 2> values{};
  /// vectors[i] pairs with values[i].
  std::array<std::array<double, 2>, 2> vectors{};
};

/// Closed-form 2x2 decomposition, shifted by the mean to avoid cancellation.
EigenSystem2 eigen_decompose(const SymStress2& s);

enum class PlaneFieldAxis {
  kInPlane,     // E along principal axis 1 (smaller eigenvalue)
  kOutOfPlane,  // E along z
};

struct PlaneSolution {
  double lambda_m = 0.0;
  /// Sign of the Maxwell eigenvalue on principal axis 1; the axis-2
  /// eigenvalue is always -lambda_m.
  int tau_sign = 1;
  PlaneFieldAxis e_axis = PlaneFieldAxis::kInPlane;
  /// Unit direction of E in 3-D (z component only for kOutOfPlane).
  std::array<double, 3> direction{1.0, 0.0, 0.0};
  /// 1: l1 <= l2 <= 0, 2: l1 <= 0 <= l2, 3: 0 <= l1 <= l2, 0: zero tensor.
  int case_id = 0;
  std::array<double, 2> principal{};
  SymStress2 total;
  double sigma_rel = 0.0;
};

PlaneSolution solve_plane(const SymStress2& sigma);

/// Remaining stress as a function of the polar angle of (l1, l2). Throws
/// std::out_of_range outside [0, 2 pi].
double sigma_rel_phi(double phi);

struct PlaneMean {
  double quadrature = 0.0;
  /// (6 - 2 sqrt 2) / (2 pi)
  double analytic = 0.0;
};

/// Trapezoidal mean of sigma_rel_phi over [0, 2 pi] with `points` nodes
/// (endpoints included). Throws std::invalid_argument for points < 2.
PlaneMean mean_plane_reduction(std::size_t points);

double analytic_plane_mean();

struct PlaneMapRow {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double sigma_rel = 0.0;
};

/// solve_plane over diag(l1, l2) on a resolution x resolution grid covering
/// [lo, hi]^2 (endpoints included). Rows are ordered with l1 varying
/// fastest. Throws std::invalid_argument for resolution < 2 or lo >= hi.
std::vector<PlaneMapRow> plane_map(std::size_t resolution, double lo, double hi);

}  // namespace stress_shield
