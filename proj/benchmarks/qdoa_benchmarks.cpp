#include <benchmark/benchmark.h>

#include "qdoa/qdoa.hpp"

namespace {

using namespace qdoa;

SubspaceDecomposition sample_decomposition(int m) {
  const ArrayGeometry g(m);
  const auto y = generate_snapshots(g, SourceSet::single(deg_to_rad(15.0), 1.0), 1.0, 32, 1);
  return decompose(sample_covariance(y), 1);
}

void BM_GenerateSnapshots(benchmark::State& state) {
  const ArrayGeometry g(static_cast<int>(state.range(0)));
  const auto src = SourceSet::single(0.26, 1.0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_snapshots(g, src, 1.0, 32, seed++));
}
BENCHMARK(BM_GenerateSnapshots)->Arg(16)->Arg(128);

void BM_Quantize(benchmark::State& state) {
  const auto y = generate_snapshots(ArrayGeometry(128), SourceSet::single(0.26, 1.0), 1.0, 32, 1);
  const Codebook cb = design_lloyd_max(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quantize_snapshots(y, cb, 1.0));
}
BENCHMARK(BM_Quantize)->Arg(2)->Arg(8);

void BM_Decompose(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto y = generate_snapshots(ArrayGeometry(m), SourceSet::single(0.26, 1.0), 1.0, 32, 1);
  const CMatrix r = sample_covariance(y);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(r, 1));
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RootMusic(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto rooting = state.range(1) == 0 ? RootingMethod::aberth : RootingMethod::companion;
  const auto d = sample_decomposition(m);
  const ArrayGeometry g(m);
  for (auto _ : state) benchmark::DoNotOptimize(root_music(d, g, rooting));
  state.SetLabel(rooting == RootingMethod::aberth ? "aberth" : "companion");
}
BENCHMARK(BM_RootMusic)->Args({16, 0})->Args({16, 1})->Args({128, 0})->Args({128, 1})
    ->Unit(benchmark::kMillisecond);

void BM_Esprit(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto d = sample_decomposition(m);
  const ArrayGeometry g(m);
  for (auto _ : state) benchmark::DoNotOptimize(esprit(d, g));
}
BENCHMARK(BM_Esprit)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_LloydMax(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(design_lloyd_max(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LloydMax)->DenseRange(1, 10, 3)->Unit(benchmark::kMillisecond);

void BM_FimNumeric(benchmark::State& state) {
  const OperatingPoint p(ArrayGeometry(static_cast<int>(state.range(0))), 0.26, 1.0, 1.0, 32,
                         QuantizerSpec(BitDepth(3)));
  for (auto _ : state) benchmark::DoNotOptimize(fim_numeric(p));
}
BENCHMARK(BM_FimNumeric)->Arg(16)->Arg(128);

void BM_RmseSweepPoint(benchmark::State& state) {
  ExperimentConfig c;
  c.trials = 8;
  c.bits = {BitDepth(3)};
  c.snr_grid_db = {0.0};
  for (auto _ : state) benchmark::DoNotOptimize(run_rmse_vs_snr(c, 1));
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_RmseSweepPoint)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
