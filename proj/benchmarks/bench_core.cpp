#include <benchmark/benchmark.h>

#include "spdecay/evolution.hpp"
#include "spdecay/spectrum.hpp"
#include "spdecay/volterra.hpp"

using namespace spdecay;

namespace {

ModelParams params(CouplingFamily family, double g_sq) {
  ModelParams p;
  p.coupling = {family, g_sq, 1.0};
  return p;
}

void BM_PrincipalValueSelfEnergy(benchmark::State& state) {
  const ModelParams p = params(CouplingFamily::ThreeDimExp, 2.0);
  const QuadratureConfig cfg;
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_pv(p, t, cfg));
    t = t < 5.0 ? t + 0.37 : 0.1;
  }
}
BENCHMARK(BM_PrincipalValueSelfEnergy);

void BM_FindEigenvalue(benchmark::State& state) {
  const auto family = state.range(0) == 2 ? CouplingFamily::TwoDimExp : CouplingFamily::ThreeDimExp;
  const ModelParams p = params(family, family == CouplingFamily::TwoDimExp ? 0.1 : 2.0);
  const QuadratureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(find_eigenvalue(p, cfg).value);
}
BENCHMARK(BM_FindEigenvalue)->Arg(2)->Arg(3);

void BM_BuildSpectralData(benchmark::State& state) {
  const ModelParams p = params(CouplingFamily::TwoDimExp, 0.5);
  const QuadratureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(build_spectral_data(p, {}, cfg).panels.size());
}
BENCHMARK(BM_BuildSpectralData)->Unit(benchmark::kMillisecond);

void BM_AmplitudeAt(benchmark::State& state) {
  const SpectralData spec =
      build_spectral_data(params(CouplingFamily::ThreeDimExp, 2.0), {}, {});
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_at(spec, t));
}
BENCHMARK(BM_AmplitudeAt)->Arg(1)->Arg(100)->Arg(10000);

void BM_SolveIde(benchmark::State& state) {
  const ModelParams p = params(CouplingFamily::ThreeDimExp, 2.0);
  const IdeOptions options{static_cast<double>(state.range(0)) * 0.01, 0.01, {}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_ide(p, options).amplitude.back());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveIde)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
