#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "stress_shield/constrained.hpp"
#include "stress_shield/montecarlo.hpp"
#include "stress_shield/plane_stress.hpp"
#include "stress_shield/unconstrained.hpp"

namespace {

using namespace stress_shield;

std::vector<SymStress3> random_tensors(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SymStress3> out(n);
  for (auto& s : out) s = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
  return out;
}

const std::vector<SymStress3>& inputs() {
  static const std::vector<SymStress3> v = random_tensors(1024);
  return v;
}

void BM_EigenDecompose(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigen_decompose(inputs()[i++ & 1023]));
  }
}
BENCHMARK(BM_EigenDecompose);

void BM_SolveUnconstrained(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_unconstrained(inputs()[i++ & 1023]));
  }
}
BENCHMARK(BM_SolveUnconstrained);

void BM_SolveTensile(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_tensile(inputs()[i++ & 1023]));
  }
}
BENCHMARK(BM_SolveTensile);

void BM_SolveCompressive(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_compressive(inputs()[i++ & 1023]));
  }
}
BENCHMARK(BM_SolveCompressive);

void BM_SolvePlane(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    const SymStress3& s = inputs()[i++ & 1023];
    benchmark::DoNotOptimize(solve_plane({s.xx, s.yy, s.xy}));
  }
}
BENCHMARK(BM_SolvePlane);

void BM_MonteCarlo(benchmark::State& state) {
  McOptions opt;
  opt.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc_mean(ProblemMode::kUnconstrained, static_cast<std::size_t>(state.range(0)), 7, opt));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
