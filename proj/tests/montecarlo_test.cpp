#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stress_shield/montecarlo.hpp"

namespace stress_shield {
namespace {

TEST(SampleSphere, DeterministicPerSeed) {
  const auto a = sample_sphere(5000, 9);
  const auto b = sample_sphere(5000, 9);
  const auto c = sample_sphere(5000, 10);
  ASSERT_EQ(a.size(), 5000u);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lambdas, b[i].lambdas);
    any_diff |= a[i].lambdas != c[i].lambdas;
  }
  EXPECT_TRUE(any_diff);
}

TEST(SampleSphere, SingleSample) {
  const auto a = sample_sphere(1, 3);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].lambdas, sample_sphere(1, 3)[0].lambdas);
  // Prefix stability: the first samples do not depend on n.
  EXPECT_EQ(a[0].lambdas, sample_sphere(10000, 3)[0].lambdas);
}

TEST(SampleSphere, UniformOnUnitSphere) {
  const auto s = sample_sphere(100000, 1);
  double mean_z = 0;
  std::size_t all_negative = 0;
  for (const SphereSample& p : s) {
    const Vec3& l = p.lambdas;
    EXPECT_NEAR(l[0] * l[0] + l[1] * l[1] + l[2] * l[2], 1.0, 1e-12);
    EXPECT_GE(p.theta, 0);
    EXPECT_LE(p.theta, std::numbers::pi);
    EXPECT_GE(p.phi, 0);
    EXPECT_LT(p.phi, 2 * std::numbers::pi);
    mean_z += l[2];
    all_negative += l[0] < 0 && l[1] < 0 && l[2] < 0;
  }
  mean_z /= static_cast<double>(s.size());
  EXPECT_NEAR(mean_z, 0, 0.01);
  EXPECT_NEAR(static_cast<double>(all_negative) / 100000.0, 0.125, 0.01);
}

TEST(SpherePoint, Coordinates) {
  const SphereSample p = sphere_point(std::numbers::pi / 2, std::numbers::pi, 2);
  EXPECT_NEAR(p.lambdas[0], -2, 1e-15);
  EXPECT_NEAR(p.lambdas[1], 0, 1e-15);
  EXPECT_NEAR(p.lambdas[2], 0, 1e-15);
}

TEST(ShardSeed, DistinctStreams) {
  EXPECT_NE(shard_seed(0, 0), shard_seed(0, 1));
  EXPECT_NE(shard_seed(0, 1), shard_seed(1, 0));
  EXPECT_EQ(shard_seed(5, 7), shard_seed(5, 7));
}

TEST(EvaluatePoint, RadiusIndependence) {
  for (ProblemMode m : {ProblemMode::kUnconstrained, ProblemMode::kTensile, ProblemMode::kCompressive}) {
    for (const SphereSample& p : sample_sphere(500, 4)) {
      const PointEvaluation base = evaluate_point(m, sphere_point(p.theta, p.phi, 1).lambdas);
      for (double r : {0.1, 10.0}) {
        const PointEvaluation e = evaluate_point(m, sphere_point(p.theta, p.phi, r).lambdas);
        EXPECT_EQ(e.feasible, base.feasible);
        if (base.feasible) EXPECT_NEAR(e.sigma_rel, base.sigma_rel, 1e-12);
      }
    }
  }
}

TEST(EvaluatePoint, InfeasibleMarkers) {
  const PointEvaluation u = evaluate_point(ProblemMode::kUnconstrained, {-1, -1, -1});
  EXPECT_FALSE(u.feasible);
  EXPECT_EQ(u.sigma_rel, 1.0);
  const PointEvaluation c = evaluate_point(ProblemMode::kCompressive, {1, 2, 3});
  EXPECT_FALSE(c.feasible);
  EXPECT_TRUE(std::isnan(c.sigma_rel));
}

TEST(McMean, DefaultPolicies) {
  EXPECT_EQ(default_policy(ProblemMode::kUnconstrained), InfeasiblePolicy::kCountAsOne);
  EXPECT_EQ(default_policy(ProblemMode::kTensile), InfeasiblePolicy::kExclude);
  EXPECT_EQ(default_policy(ProblemMode::kCompressive), InfeasiblePolicy::kExclude);
  const McEstimate e = mc_mean(ProblemMode::kTensile, 100, 0);
  EXPECT_EQ(e.policy, InfeasiblePolicy::kExclude);
  EXPECT_EQ(e.generator, kGeneratorName);
  EXPECT_THROW(mc_mean(ProblemMode::kTensile, 0, 0), std::invalid_argument);
}

TEST(McMean, BitIdenticalAcrossThreadCounts) {
  for (ProblemMode m : {ProblemMode::kUnconstrained, ProblemMode::kTensile, ProblemMode::kCompressive}) {
    McOptions one;
    one.threads = 1;
    McOptions many;
    many.threads = 4;
    const McEstimate a = mc_mean(m, 30000, 77, one);
    const McEstimate b = mc_mean(m, 30000, 77, many);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(a.n_infeasible, b.n_infeasible);
  }
}

TEST(McMean, PoliciesDifferOnlyByInfeasibleSamples) {
  McOptions keep;
  keep.policy = InfeasiblePolicy::kCountAsOne;
  McOptions drop;
  drop.policy = InfeasiblePolicy::kExclude;
  const McEstimate a = mc_mean(ProblemMode::kUnconstrained, 20000, 5, keep);
  const McEstimate b = mc_mean(ProblemMode::kUnconstrained, 20000, 5, drop);
  EXPECT_EQ(a.n_infeasible, b.n_infeasible);
  const double feasible = 20000.0 - static_cast<double>(a.n_infeasible);
  EXPECT_NEAR(a.mean * 20000.0, b.mean * feasible + static_cast<double>(a.n_infeasible), 1e-8);
}

TEST(McMean, InfeasibleUnconstrainedSamplesAreAllNegative) {
  for (const SphereSample& p : sample_sphere(20000, 6)) {
    if (evaluate_point(ProblemMode::kUnconstrained, p.lambdas).feasible) continue;
    EXPECT_LT(p.lambdas[0], 0);
    EXPECT_LT(p.lambdas[1], 0);
    EXPECT_LT(p.lambdas[2], 0);
  }
}

TEST(McMean, DoublingSampleCountIsStable) {
  for (ProblemMode m : {ProblemMode::kUnconstrained, ProblemMode::kTensile, ProblemMode::kCompressive}) {
    const McEstimate a = mc_mean(m, 20000, 8);
    const McEstimate b = mc_mean(m, 40000, 8);
    EXPECT_LE(std::abs(a.mean - b.mean), 4 * a.std_error) << to_string(m);
  }
}

TEST(AngularMap, GridConvention) {
  const auto rows = angular_map(ProblemMode::kUnconstrained, 3, 5);
  ASSERT_EQ(rows.size(), 15u);
  EXPECT_EQ(rows[0].theta, 0);
  EXPECT_EQ(rows[0].phi, 0);
  EXPECT_EQ(rows[1].theta, 0);
  EXPECT_NEAR(rows[4].phi, 2 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(rows[5].theta, std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(rows[14].theta, std::numbers::pi, 1e-15);
  EXPECT_THROW(angular_map(ProblemMode::kTensile, 1, 5), std::invalid_argument);
}

TEST(AngularMap, HandValues) {
  // theta = pi/2, phi = 3 pi / 4 -> lambdas (-sqrt(1/2), sqrt(1/2), 0).
  const auto rows = angular_map(ProblemMode::kUnconstrained, 3, 9);
  const AngularMapRow& r = rows[1 * 9 + 3];
  EXPECT_NEAR(r.phi, 3 * std::numbers::pi / 4, 1e-15);
  EXPECT_TRUE(r.feasible);
  EXPECT_NEAR(r.sigma_rel, std::sqrt(1.0 / 3.0), 1e-12);

  const double t = std::acos(1 / std::sqrt(3.0));
  const Vec3 l = sphere_point(t, 3 * std::numbers::pi / 4).lambdas;
  EXPECT_NEAR(evaluate_point(ProblemMode::kUnconstrained, l).sigma_rel, 0, 1e-12);

  // All three eigenvalues positive.
  const PointEvaluation c = evaluate_point(ProblemMode::kCompressive, sphere_point(0.9, 0.7).lambdas);
  EXPECT_FALSE(c.feasible);
}

TEST(AngularMap, CompressiveHasIncreasedStress) {
  bool above_one = false;
  for (const AngularMapRow& r : angular_map(ProblemMode::kCompressive, 32, 32)) {
    if (r.feasible && r.sigma_rel > 1) above_one = true;
  }
  EXPECT_TRUE(above_one);
}

}  // namespace
}  // namespace stress_shield
