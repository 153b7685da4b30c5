#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stress_shield/oracle.hpp"
#include "stress_shield/unconstrained.hpp"
#include "test_support.hpp"

namespace stress_shield {
namespace {

using testing::Gen;
using testing::max_abs_diff;

TEST(SolveUnconstrained, PerfectAbsorption) {
  const ReductionSolution s = solve_unconstrained(SymStress3::diag(-1, 1, 1));
  ASSERT_TRUE(s.solved());
  EXPECT_NEAR(s.lambda_m, 1.0, 1e-15);
  EXPECT_NEAR(s.sigma_rel, 0.0, 1e-15);
  EXPECT_NEAR(frobenius_norm(s.total), 0.0, 1e-15);
  EXPECT_EQ(s.direction, (Vec3{1, 0, 0}));
  EXPECT_NEAR(s.alpha, std::sqrt(2.0), 1e-15);
}

TEST(SolveUnconstrained, MixedSignDiagonal) {
  // lambda_m = (-l1 + l2 + l3) / 3 for ascending (-1, 1, 3).
  const ReductionSolution s = solve_unconstrained(SymStress3::diag(3, 1, -1));
  ASSERT_TRUE(s.solved());
  EXPECT_NEAR(s.lambda_m, 5.0 / 3.0, 1e-15);
  EXPECT_EQ(s.direction, (Vec3{0, 0, 1}));
  EXPECT_EQ(s.eigen_choice, 0u);
  const SymStress3 want = SymStress3::diag(3, 1, -1) + maxwell_stress({0, 0, s.alpha}, {});
  EXPECT_LE(max_abs_diff(s.total, want), 1e-14);
  EXPECT_NEAR(want.xx, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(want.zz, 2.0 / 3.0, 1e-14);
}

TEST(SolveUnconstrained, AllNegativeHasNoRealSolution) {
  const ReductionSolution s = solve_unconstrained(SymStress3::diag(-1, -1, -1));
  EXPECT_EQ(s.status, SolveStatus::kNoRealSolution);
  EXPECT_EQ(s.sigma_rel, 1.0);
  EXPECT_EQ(s.alpha, 0.0);
  EXPECT_EQ(s.total, SymStress3::diag(-1, -1, -1));
}

TEST(SolveUnconstrained, ZeroTensor) {
  const ReductionSolution s = solve_unconstrained({});
  EXPECT_TRUE(s.solved());
  EXPECT_EQ(s.sigma_rel, 0.0);
  EXPECT_EQ(s.alpha, 0.0);
}

TEST(SolveUnconstrained, BoundaryIsFeasibleWithZeroField) {
  // -l1 + l2 + l3 = 0 exactly for ascending (-2, -1, -1).
  const ReductionSolution s = solve_unconstrained(SymStress3::diag(-1, -2, -1));
  EXPECT_TRUE(s.solved());
  EXPECT_NEAR(s.lambda_m, 0.0, 1e-15);
  EXPECT_NEAR(s.sigma_rel, 1.0, 1e-15);
}

TEST(SolveUnconstrained, RejectsOtherRelativePermittivity) {
  EXPECT_THROW(solve_unconstrained(SymStress3::diag(1, 2, 3), MaterialParams(1.0, 2.0)),
               std::invalid_argument);
}

TEST(SolveUnconstrained, PhysicalPermittivityScalesFieldOnly) {
  const SymStress3 s = SymStress3::diag(3, 1, -1);
  const ReductionSolution a = solve_unconstrained(s);
  const ReductionSolution b = solve_unconstrained(s, MaterialParams::physical());
  EXPECT_NEAR(b.sigma_rel, a.sigma_rel, 1e-14);
  EXPECT_NEAR(b.lambda_m, a.lambda_m, 1e-14);
  EXPECT_NEAR(b.alpha * std::sqrt(kVacuumPermittivitySI), a.alpha, 1e-12);
  EXPECT_LE(max_abs_diff(a.total, b.total), 1e-12);
}

TEST(SigmaRelForChoice, HandValue) {
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(sigma_rel_for_choice({-h, h, 0}, 0), std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(sigma_rel_for_choice({-1, 1, 1}, 0), 0.0, 1e-15);
  EXPECT_THROW(sigma_rel_for_choice({0, 0, 0}, 0), std::invalid_argument);
  EXPECT_THROW(sigma_rel_for_choice({1, 2, 3}, 3), std::invalid_argument);
}

TEST(SigmaRelForChoice, MatchesDirectNormForEveryChoice) {
  Gen g(21);
  int checked = 0;
  for (int n = 0; n < 2000; ++n) {
    Vec3 l{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    std::sort(l.begin(), l.end());
    const Vec3 lm = maxwell_eigen_magnitudes(l);
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (std::size_t k = 0; k < 3; ++k) {
      if (lm[k] < 0) continue;
      const Vec3 e = EField::along(axes[k], std::sqrt(2 * lm[k])).vec();
      const SymStress3 s = SymStress3::diag(l[0], l[1], l[2]);
      const double want = std::sqrt(testing::direct_objective(s, e)) / frobenius_norm(s);
      EXPECT_NEAR(sigma_rel_for_choice(l, k), want, 1e-12);
      ++checked;
    }
  }
  EXPECT_GT(checked, 2500);
}

TEST(AlphaFromEigenvalue, GeneralPermittivityIsStationary) {
  Gen g(22);
  for (int n = 0; n < 500; ++n) {
    const MaterialParams p(g.uniform(0.5, 2), g.uniform(1, 6));
    const SymStress3 s = g.tensor();
    const EigenSystem3 es = eigen_decompose(s);
    for (std::size_t k = 0; k < 3; ++k) {
      const FieldMagnitude fm = alpha_from_eigenvalue(s, es.values[k], p);
      EXPECT_EQ(fm.report.feasible, fm.alpha.has_value());
      EXPECT_NEAR(fm.report.discriminant, s.trace() - 2 * p.epsr() * es.values[k], 1e-14);
      if (!fm.alpha) continue;
      const Vec3 r = stationarity_residual(s, EField::along(es.vectors[k], *fm.alpha), p);
      EXPECT_LE(norm(r), 1e-12 * (1 + *fm.alpha));
    }
  }
}

TEST(StationarityResidual, ZeroFieldIsCritical) {
  const Vec3 r = stationarity_residual(SymStress3::diag(1, 2, 3), {}, {});
  EXPECT_EQ(r, (Vec3{0, 0, 0}));
}

TEST(SolveUnconstrained, PropertyFiniteDifferenceGradientVanishes) {
  Gen g(23);
  int feasible = 0;
  for (int n = 0; n < 1000; ++n) {
    const SymStress3 s = g.tensor();
    const ReductionSolution r = solve_unconstrained(s);
    if (!r.solved()) continue;
    ++feasible;
    const Vec3 grad = testing::fd_gradient(s, r.field().vec(), 1e-6);
    EXPECT_LE(norm(grad), 1e-5 * std::max(1.0, frobenius_norm_squared(s)));
  }
  EXPECT_GT(feasible, 800);
}

TEST(SolveUnconstrained, PropertySmallestEigenvalueChoiceIsMinimal) {
  Gen g(24);
  for (int n = 0; n < 3000; ++n) {
    Vec3 l{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    std::sort(l.begin(), l.end());
    const Vec3 lm = maxwell_eigen_magnitudes(l);
    if (lm[0] < 0 || lm[1] < 0 || lm[2] < 0) continue;
    const double r0 = sigma_rel_for_choice(l, 0);
    EXPECT_LE(r0, sigma_rel_for_choice(l, 1) + 1e-12);
    EXPECT_LE(r0, sigma_rel_for_choice(l, 2) + 1e-12);
  }
}

TEST(SolveUnconstrained, PropertyInfeasibleOnlyWithNegativeEigenvalues) {
  Gen g(25);
  for (int n = 0; n < 3000; ++n) {
    const SymStress3 s = g.tensor();
    const ReductionSolution r = solve_unconstrained(s);
    if (r.status != SolveStatus::kNoRealSolution) continue;
    const Vec3 l = eigen_decompose(s).values;
    EXPECT_LT(l[0], 0);
    EXPECT_LT(l[1], 0);
    EXPECT_LT(-l[0] + l[1] + l[2], 0);
  }
}

TEST(SolveUnconstrained, PropertyScaleInvariance) {
  Gen g(26);
  for (int n = 0; n < 500; ++n) {
    const SymStress3 s = g.tensor();
    const double base = solve_unconstrained(s).sigma_rel;
    for (double c : {1e-3, 1.0, 1e3}) {
      EXPECT_NEAR(solve_unconstrained(c * s).sigma_rel, base, 1e-12);
    }
  }
}

TEST(SolveUnconstrained, PropertyRotationEquivariance) {
  Gen g(27);
  for (int n = 0; n < 100; ++n) {
    const SymStress3 s = g.tensor();
    const Mat3 rot = g.rotation();
    const ReductionSolution a = solve_unconstrained(s);
    const ReductionSolution b = solve_unconstrained(s.rotated(rot));
    EXPECT_EQ(a.status, b.status);
    EXPECT_NEAR(a.sigma_rel, b.sigma_rel, 1e-12);
    EXPECT_LE(max_abs_diff(a.total.rotated(rot), b.total), 1e-12);
  }
}

TEST(SolveUnconstrained, PropertyBeatsBruteForce) {
  Gen g(28);
  for (int n = 0; n < 20; ++n) {
    const SymStress3 s = g.tensor();
    const ReductionSolution r = solve_unconstrained(s);
    const double closed = frobenius_norm_squared(r.total);
    const oracle::GridResult o = oracle::grid_min_unconstrained(s, {}, oracle::magnitude_bound(s, {}));
    EXPECT_LE(closed, o.objective + 1e-12);
    EXPECT_LE(o.objective - closed, 1e-6);
  }
}

}  // namespace
}  // namespace stress_shield
