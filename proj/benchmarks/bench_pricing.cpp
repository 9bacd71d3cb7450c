#include <benchmark/benchmark.h>

#include "asianq/gy_transform.hpp"
#include "asianq/hermite_price.hpp"
#include "asianq/invert_price.hpp"
#include "asianq/mc_oracle.hpp"
#include "asianq/yor_triple.hpp"

namespace {

// Table 3 normalized parameters, indexed by sigma = 20%, 30%, 40%, 50%.
constexpr double kNu[] = {3.5, 1.0, 0.125, -0.28};
constexpr double kH[] = {0.01, 0.0225, 0.04, 0.0625};

void BM_Hermite(benchmark::State& state) {
  const auto i = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asianq::price_hermite(kNu[i], kH[i], kH[i]).value);
  }
}
BENCHMARK(BM_Hermite)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Laplace(benchmark::State& state) {
  const auto i = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asianq::price_asian_laplace(kNu[i], kH[i], kH[i]).value);
  }
}
BENCHMARK(BM_Laplace)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_YorTriple(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(asianq::price_yor_triple(-0.6, 0.0625, 0.0625).price);
  }
}
BENCHMARK(BM_YorTriple)->Unit(benchmark::kMillisecond);

void BM_DClosed(benchmark::State& state) {
  const asianq::cplx z(3.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(asianq::d_closed(-0.6, 0.0625, z));
}
BENCHMARK(BM_DClosed);

void BM_DWeber(benchmark::State& state) {
  const asianq::cplx z(3.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(asianq::d_weber(-0.6, 0.0625, z));
}
BENCHMARK(BM_DWeber)->Unit(benchmark::kMicrosecond);

void BM_Psi(benchmark::State& state) {
  const double h = state.range(0) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(asianq::psi_scaled(1.0, h).mantissa);
}
BENCHMARK(BM_Psi)->Arg(20)->Arg(250)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
  asianq::McConfig cfg;
  cfg.paths = state.range(0);
  cfg.steps = 64;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(asianq::mc_price(-0.28, 0.0625, 0.0625, cfg).mean);
  state.SetItemsProcessed(state.iterations() * cfg.paths);
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
