#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stress_shield/constrained.hpp"
#include "stress_shield/tensor.hpp"

namespace stress_shield {

enum class ProblemMode { kUnconstrained, kTensile, kCompressive };

enum class InfeasiblePolicy {
  kCountAsOne,  // infeasible samples contribute sigma_rel = 1
  kExclude,     // infeasible samples are dropped from the mean
};

const char* to_string(ProblemMode m);
const char* to_string(InfeasiblePolicy p);

/// count-as-one for the unconstrained problem, exclude for the constrained ones.
InfeasiblePolicy default_policy(ProblemMode m);

/// Eigenvalue triple on the sphere of radius r:
/// (r sin t cos p, r sin t sin p, r cos t).
struct SphereSample {
  double theta = 0.0;
  double phi = 0.0;
  Vec3 lambdas{};
};

SphereSample sphere_point(double theta, double phi, double radius = 1.0);

/// Samples per independent generator substream.
inline constexpr std::size_t kShardSize = 4096;
/// Recorded in McEstimate so results can be traced to the generator.
inline constexpr const char* kGeneratorName = "mt19937_64/splitmix64-shard4096";

/// Seed of the generator for shard `shard` (SplitMix64 of seed + shard).
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard);

/// n points uniform on the unit sphere: phi = 2 pi U, theta = acos(1 - 2U).
/// Deterministic for a given seed.
std::vector<SphereSample> sample_sphere(std::size_t n, std::uint64_t seed);

struct PointEvaluation {
  double sigma_rel = 0.0;
  bool feasible = true;
};

/// Solves diag(lambdas) with the solver matching `mode`. Infeasible points
/// report sigma_rel = 1 (unconstrained) or NaN (constrained).
PointEvaluation evaluate_point(ProblemMode mode, const Vec3& lambdas,
                               CompressiveFallback fallback = CompressiveFallback::kUpperBound);

struct McOptions {
  std::optional<InfeasiblePolicy> policy;  // default_policy(mode) when unset
  CompressiveFallback fallback = CompressiveFallback::kUpperBound;
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

struct McEstimate {
  double mean = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  InfeasiblePolicy policy = InfeasiblePolicy::kCountAsOne;
  std::size_t n_infeasible = 0;
  /// Standard error of the mean over the samples that entered it.
  double std_error = 0.0;
  std::string generator = kGeneratorName;
};

/// Mean sigma_rel over n uniform sphere samples. Throws
/// std::invalid_argument for n == 0.
McEstimate mc_mean(ProblemMode mode, std::size_t n, std::uint64_t seed,
                   const McOptions& options = {});

struct AngularMapRow {
  double theta = 0.0;
  double phi = 0.0;
  double sigma_rel = 0.0;
  bool feasible = true;
};

/// Unit-radius map over theta in [0, pi] (outer) and phi in [0, 2 pi]
/// (inner), endpoints included. Throws std::invalid_argument if either
/// step count is < 2.
std::vector<AngularMapRow> angular_map(
    ProblemMode mode, std::size_t theta_steps, std::size_t phi_steps,
    CompressiveFallback fallback = CompressiveFallback::kUpperBound);

}  // namespace stress_shield
