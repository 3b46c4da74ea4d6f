// Parallel kernels against their serial references on scenario-sized inputs.
//
//   build/bench/wls_bench --benchmark_filter=Sirs
//
// Thread count follows OMP_NUM_THREADS.

#include "wls/baselines.hpp"
#include "wls/reference.hpp"
#include "wls/screening.hpp"
#include "wls/simgen.hpp"

#include <benchmark/benchmark.h>

#include <span>

namespace {

using namespace wls;

// One replicate of scenario 1.1 (n = 500, p = 700, spiked design).
const Dataset& sample() {
  static const Dataset data = generate(find_scenario("1.1"), 0);
  return data;
}

struct Factors {
  SpectralDecomposition svd;
  WeightMatrix w;
};

const Factors& factors() {
  static const Factors f = [] {
    const Dataset& d = sample();
    const DesignMatrix x = center_columns(d.x.values);
    SpectralDecomposition svd = thin_svd(x, std::min(x.n(), x.p()));
    const SlicingScheme slices = make_slices(d.y, default_slice_count(x.n()));
    WeightMatrix w = weight_matrix(slice_means(svd.left, slices), x.n());
    return Factors{std::move(svd), std::move(w)};
  }();
  return f;
}

std::span<const double> response() { return sample().y.values; }

void WlsScores(benchmark::State& state) {
  const Factors& f = factors();
  for (auto _ : state) benchmark::DoNotOptimize(wls_scores(f.svd.right, f.w));
}

void WlsScoresReference(benchmark::State& state) {
  const Factors& f = factors();
  for (auto _ : state) benchmark::DoNotOptimize(reference::wls_scores(f.svd.right, f.w));
}

void Sis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sis_scores(sample().x, sample().y));
}

void SisReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::sis_scores(sample().x.values, response()));
}

void DcSis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dcor_scores(sample().x, sample().y));
}

void DcSisReference(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::dcor_scores(sample().x.values, response()));
  }
}

void Sirs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sirs_scores(sample().x, sample().y));
}

void SirsReference(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::sirs_scores(sample().x.values, response()));
  }
}

// End to end, for scale: the SVD dominates the WLS screen.
void ScreenAuto(benchmark::State& state) {
  ScreenConfig config;
  config.d_mode = SpikeMode::Auto;
  for (auto _ : state) benchmark::DoNotOptimize(screen(sample().x, sample().y, config));
}

BENCHMARK(WlsScores)->Unit(benchmark::kMicrosecond);
BENCHMARK(WlsScoresReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(Sis)->Unit(benchmark::kMicrosecond);
BENCHMARK(SisReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(DcSis)->Unit(benchmark::kMillisecond);
BENCHMARK(DcSisReference)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(Sirs)->Unit(benchmark::kMillisecond);
BENCHMARK(SirsReference)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(ScreenAuto)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
