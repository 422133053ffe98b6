#include <benchmark/benchmark.h>

#include <cstdint>

#include "hypercorr/models.hpp"
#include "hypercorr/orbit.hpp"
#include "hypercorr/permutation.hpp"
#include "hypercorr/rng.hpp"
#include "hypercorr/second_moment.hpp"
#include "hypercorr/statistics.hpp"

namespace hypercorr {
namespace {

void BM_NextNormal(benchmark::State& state) {
  RngStream rng(9);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_normal());
}
BENCHMARK(BM_NextNormal);

void BM_UniformPermutation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(uniform_random_permutation(n, rng));
}
BENCHMARK(BM_UniformPermutation)->Arg(8)->Arg(64);

void BM_OrbitProfile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(1);
  const Permutation pi = uniform_random_permutation(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_profile(pi, 3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binomial(n, 3)));
}
BENCHMARK(BM_OrbitProfile)->Arg(8)->Arg(12)->Arg(16);

void BM_SampleGaussian(benchmark::State& state) {
  const GaussianModelSpec spec(static_cast<int>(state.range(0)), 3, 0.8);
  RngStream master(7);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng = master.child(i++);
    benchmark::DoNotOptimize(sample_gaussian(spec, Hypothesis::kPlanted, rng));
  }
}
BENCHMARK(BM_SampleGaussian)->Arg(8)->Arg(12);

void BM_SampleEr(benchmark::State& state) {
  const ERModelSpec spec(static_cast<int>(state.range(0)), 3, 0.3, 0.5);
  RngStream master(8);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng = master.child(i++);
    benchmark::DoNotOptimize(sample_er(spec, Hypothesis::kPlanted, rng));
  }
}
BENCHMARK(BM_SampleEr)->Arg(8)->Arg(12);

void BM_ExactMax(benchmark::State& state) {
  const GaussianModelSpec spec(static_cast<int>(state.range(0)), 3, 0.8);
  RngStream rng(2);
  const SamplePair pair = sample_gaussian(spec, Hypothesis::kPlanted, rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_statistic_exact(pair.a1, pair.a2));
}
BENCHMARK(BM_ExactMax)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_HeuristicMax(benchmark::State& state) {
  const GaussianModelSpec spec(static_cast<int>(state.range(0)), 3, 0.8);
  RngStream draw(3);
  const SamplePair pair = sample_gaussian(spec, Hypothesis::kPlanted, draw);
  const int restarts = static_cast<int>(state.range(1));
  for (auto _ : state) {
    RngStream rng(4);
    benchmark::DoNotOptimize(max_statistic_heuristic(pair.a1, pair.a2, restarts, rng));
  }
}
BENCHMARK(BM_HeuristicMax)
    ->Args({7, 0})
    ->Args({7, 10})
    ->Args({12, 0})
    ->Args({12, 10})
    ->Unit(benchmark::kMicrosecond);

void BM_SecondMomentCycleTypes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        second_moment_gaussian(n, 3, 0.5, EnumerationPath::kCycleTypes, n));
  }
}
BENCHMARK(BM_SecondMomentCycleTypes)->Arg(8)->Arg(12)->Arg(16);

void BM_SecondMomentFullPermutations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        second_moment_gaussian(n, 3, 0.5, EnumerationPath::kFullPermutations, n));
  }
  state.SetLabel("oracle path");
}
BENCHMARK(BM_SecondMomentFullPermutations)->Arg(6)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_CalibratedThreshold(benchmark::State& state) {
  const ModelSpec spec = GaussianModelSpec(5, 2, 0.8);
  StatisticSpec method;
  method.method = StatisticMethod::kExact;
  const RngStream rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(calibrated_threshold(spec, 0.05, 50, method, rng));
  }
  state.SetLabel("50 null draws, exact max on S5");
}
BENCHMARK(BM_CalibratedThreshold)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hypercorr

BENCHMARK_MAIN();
