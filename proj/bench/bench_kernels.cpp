// Serial reference versus OpenMP kernels on large detector grids.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "eraser/engine.hpp"
#include "eraser/kernels.hpp"

namespace {

std::vector<double> phase_grid(std::size_t n) {
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 8.0 * std::numbers::pi * static_cast<double>(i) / n;
  return d;
}

eraser::StateVector erased_state() {
  const auto s = eraser::build_initial({});
  return eraser::apply_slit_qwps(s, std::numbers::pi / 4, -std::numbers::pi / 4).vector();
}

void BM_DetectionSerial(benchmark::State& st) {
  const auto deltas = phase_grid(static_cast<std::size_t>(st.range(0)));
  const auto state = erased_state();
  const std::optional<eraser::LinearOperator> pol = eraser::polarizer(std::numbers::pi / 4);
  for (auto _ : st) benchmark::DoNotOptimize(eraser::kernels::detection_serial(state, pol, deltas));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_DetectionParallel(benchmark::State& st) {
  const auto deltas = phase_grid(static_cast<std::size_t>(st.range(0)));
  const auto state = erased_state();
  const std::optional<eraser::LinearOperator> pol = eraser::polarizer(std::numbers::pi / 4);
  for (auto _ : st) benchmark::DoNotOptimize(eraser::kernels::detection_parallel(state, pol, deltas));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PoissonSerial(benchmark::State& st) {
  const std::vector<double> means(static_cast<std::size_t>(st.range(0)), 200.0);
  for (auto _ : st) benchmark::DoNotOptimize(eraser::kernels::poisson_serial(means, 7));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PoissonParallel(benchmark::State& st) {
  const std::vector<double> means(static_cast<std::size_t>(st.range(0)), 200.0);
  for (auto _ : st) benchmark::DoNotOptimize(eraser::kernels::poisson_parallel(means, 7));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_DetectionSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_DetectionParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_PoissonSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_PoissonParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

BENCHMARK_MAIN();
