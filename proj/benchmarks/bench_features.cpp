#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "brainheart/features/bandpower.hpp"
#include "brainheart/features/catch22.hpp"
#include "brainheart/features/hrv.hpp"
#include "brainheart/preprocess/filter.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed, double level = 0.0, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(level, sd);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

void BM_Hrv(benchmark::State& state) {
  const auto ibi = noise(static_cast<std::size_t>(state.range(0)), 1, 850.0, 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(bh::hrv_from_intervals(ibi));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hrv)->Arg(60)->Arg(600)->Arg(6000);

void BM_Catch22(benchmark::State& state) {
  auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (std::size_t i = 1; i < x.size(); ++i) x[i] += x[i - 1];
  for (auto _ : state) benchmark::DoNotOptimize(bh::compute_catch22(x));
}
BENCHMARK(BM_Catch22)->Arg(250)->Arg(1000)->Arg(4000);

void BM_FilterZeroPhase(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(bh::apply_filter(x, 250.0, bh::FilterSpec{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterZeroPhase)->Arg(2000)->Arg(30000);

void BM_BandPower(benchmark::State& state) {
  std::vector<std::vector<double>> epoch;
  for (int c = 0; c < state.range(0); ++c) epoch.push_back(noise(2000, 10 + c));
  for (auto _ : state) benchmark::DoNotOptimize(bh::compute_band_power(epoch, 250.0));
}
BENCHMARK(BM_BandPower)->Arg(1)->Arg(32);

}  // namespace
