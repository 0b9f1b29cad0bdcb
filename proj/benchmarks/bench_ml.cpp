#include <benchmark/benchmark.h>

#include <random>

#include "brainheart/ml/forest.hpp"
#include "brainheart/ml/gbt.hpp"

namespace {

bh::ml::Dataset rows(std::size_t n, std::size_t features) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  bh::ml::Dataset d;
  d.n_classes = 3;
  d.class_names = {"a", "b", "c"};
  d.x = bh::ml::Matrix(n, features);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 3);
    for (std::size_t f = 0; f < features; ++f) d.x(i, f) = n01(rng) + (f % 3 == static_cast<std::size_t>(c) ? 1.5 : 0.0);
    d.y.push_back(c);
  }
  return d;
}

void BM_Forest(benchmark::State& state) {
  const auto d = rows(static_cast<std::size_t>(state.range(0)), 22);
  bh::ml::ForestConfig cfg;
  cfg.n_trees = 100;
  for (auto _ : state) benchmark::DoNotOptimize(bh::ml::train_forest(d, cfg));
}
BENCHMARK(BM_Forest)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_GbtSoftmax(benchmark::State& state) {
  const auto d = rows(static_cast<std::size_t>(state.range(0)), 22);
  bh::ml::GbtConfig cfg;
  cfg.n_trees = 100;
  for (auto _ : state) benchmark::DoNotOptimize(bh::ml::train_gbt(d, cfg));
}
BENCHMARK(BM_GbtSoftmax)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

}  // namespace
