#include "stress_shield/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "stress_shield/unconstrained.hpp"

namespace stress_shield {

const char* to_string(ProblemMode m) {
  switch (m) {
    case ProblemMode::kUnconstrained: return "unconstrained";
    case ProblemMode::kTensile: return "tensile";
    case ProblemMode::kCompressive: return "compressive";
  }
  return "unknown";
}

const char* to_string(InfeasiblePolicy p) {
  return p == InfeasiblePolicy::kCountAsOne ? "count-as-one" : "exclude";
}

InfeasiblePolicy default_policy(ProblemMode m) {
  return m == ProblemMode::kUnconstrained ? InfeasiblePolicy::kCountAsOne
                                          : InfeasiblePolicy::kExclude;
}

SphereSample sphere_point(double theta, double phi, double radius) {
  const double st = std::sin(theta);
  return {theta, phi, {radius * st * std::cos(phi), radius * st * std::sin(phi),
                       radius * std::cos(theta)}};
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
  std::uint64_t z = seed + shard * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// Top 53 bits mapped to [0, 1); identical on every platform, unlike
// std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t shard_count(std::size_t n) { return (n + kShardSize - 1) / kShardSize; }

template <typename Fn>
void for_each_sample_in_shard(std::size_t n, std::uint64_t seed, std::size_t shard, Fn&& fn) {
  std::mt19937_64 rng(shard_seed(seed, shard));
  const std::size_t begin = shard * kShardSize;
  const std::size_t end = std::min(n, begin + kShardSize);
  for (std::size_t i = begin; i < end; ++i) {
    const double phi = 2.0 * std::numbers::pi * unit_uniform(rng);
    const double theta = std::acos(1.0 - 2.0 * unit_uniform(rng));
    fn(i, sphere_point(theta, phi));
  }
}

// Runs fn(shard) for every shard on a small pool; fn must only write
// shard-local state.
template <typename Fn>
void parallel_shards(std::size_t shards, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, shards));
  if (threads <= 1) {
    for (std::size_t s = 0; s < shards; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < shards; s = next++) fn(s);
    });
  }
}

}  // namespace

std::vector<SphereSample> sample_sphere(std::size_t n, std::uint64_t seed) {
  std::vector<SphereSample> out(n);
  for (std::size_t s = 0; s < shard_count(n); ++s) {
    for_each_sample_in_shard(n, seed, s, [&](std::size_t i, const SphereSample& smp) {
      out[i] = smp;
    });
  }
  return out;
}

PointEvaluation evaluate_point(ProblemMode mode, const Vec3& l, CompressiveFallback fallback) {
  const SymStress3 sigma = SymStress3::diag(l[0], l[1], l[2]);
  ReductionSolution sol;
  switch (mode) {
    case ProblemMode::kUnconstrained: sol = solve_unconstrained(sigma); break;
    case ProblemMode::kTensile: sol = solve_tensile(sigma); break;
    case ProblemMode::kCompressive: sol = solve_compressive(sigma, {}, fallback); break;
  }
  return {sol.sigma_rel, sol.solved()};
}

McEstimate mc_mean(ProblemMode mode, std::size_t n, std::uint64_t seed,
                   const McOptions& options) {
  if (n == 0) throw std::invalid_argument("mc_mean: n must be >= 1");
  McEstimate est;
  est.n = n;
  est.seed = seed;
  est.policy = options.policy.value_or(default_policy(mode));

  struct ShardTotals {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    std::size_t infeasible = 0;
  };
  const std::size_t shards = shard_count(n);
  std::vector<ShardTotals> totals(shards);
  parallel_shards(shards, options.threads, [&](std::size_t s) {
    ShardTotals& t = totals[s];
    for_each_sample_in_shard(n, seed, s, [&](std::size_t, const SphereSample& smp) {
      const PointEvaluation ev = evaluate_point(mode, smp.lambdas, options.fallback);
      double value = ev.sigma_rel;
      if (!ev.feasible) {
        ++t.infeasible;
        if (est.policy == InfeasiblePolicy::kExclude) return;
        value = 1.0;
      }
      t.sum += value;
      t.sum_sq += value * value;
      ++t.count;
    });
  });

  ShardTotals all;
  for (const ShardTotals& t : totals) {
    all.sum += t.sum;
    all.sum_sq += t.sum_sq;
    all.count += t.count;
    all.infeasible += t.infeasible;
  }
  est.n_infeasible = all.infeasible;
  if (all.count == 0) {
    est.mean = std::numeric_limits<double>::quiet_NaN();
    est.std_error = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  const double cnt = static_cast<double>(all.count);
  est.mean = all.sum / cnt;
  const double var = all.count > 1
                         ? std::max(0.0, (all.sum_sq - cnt * est.mean * est.mean) / (cnt - 1.0))
                         : 0.0;
  est.std_error = std::sqrt(var / cnt);
  return est;
}

std::vector<AngularMapRow> angular_map(ProblemMode mode, std::size_t theta_steps,
                                       std::size_t phi_steps, CompressiveFallback fallback) {
  if (theta_steps < 2 || phi_steps < 2) {
    throw std::invalid_argument("angular_map: step counts must be >= 2");
  }
  std::vector<AngularMapRow> rows;
  rows.reserve(theta_steps * phi_steps);
  for (std::size_t i = 0; i < theta_steps; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(theta_steps - 1);
    for (std::size_t j = 0; j < phi_steps; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(phi_steps - 1);
      const PointEvaluation ev = evaluate_point(mode, sphere_point(theta, phi).lambdas, fallback);
      rows.push_back({theta, phi, ev.sigma_rel, ev.feasible});
    }
  }
  return rows;
}

}  // namespace stress_shield
