#include <benchmark/benchmark.h>

#include "steklov/disk.hpp"
#include "steklov/intersect.hpp"

using namespace steklov;

namespace {

void curves_parallel(benchmark::State& state) {
  const auto grid = uniform_grid(0.0, 50.0, 501);
  for (auto _ : state) benchmark::DoNotOptimize(curves(0, 20, grid));
}

void curves_reference(benchmark::State& state) {
  const auto grid = uniform_grid(0.0, 50.0, 501);
  for (auto _ : state) benchmark::DoNotOptimize(curves_serial(0, 20, grid));
}

void envelope_parallel(benchmark::State& state) {
  const auto grid = uniform_grid(0.0, 1000.0, 20001);
  for (auto _ : state) benchmark::DoNotOptimize(envelope(grid));
}

void envelope_reference(benchmark::State& state) {
  const auto grid = uniform_grid(0.0, 1000.0, 20001);
  for (auto _ : state) benchmark::DoNotOptimize(envelope_serial(grid));
}

void intersections_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(intersections(0, 2000));
}

void intersections_reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(intersections_serial(0, 2000));
}

}  // namespace

BENCHMARK(curves_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(curves_reference)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(envelope_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(envelope_reference)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(intersections_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(intersections_reference)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
