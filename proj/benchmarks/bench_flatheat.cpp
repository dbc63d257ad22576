#include <benchmark/benchmark.h>

#include "flatheat/flat_series.hpp"
#include "flatheat/gevrey.hpp"
#include "flatheat/heat_sim.hpp"
#include "flatheat/materials.hpp"

namespace {

using namespace flatheat;

const TransitionSpec kSpec{};
const RodGeometry kRod{0.2};

const MaterialProperties& aluminum() {
  static const auto m = MaterialRegistry::builtin().at("aluminum");
  return m;
}

const DerivativeTable& table40() {
  static const auto t = bump_derivatives(kSpec, uniform_grid(kSpec.T, 1001), 40);
  return t;
}

void BM_BumpDerivatives(benchmark::State& state) {
  const auto times = uniform_grid(kSpec.T, static_cast<int>(state.range(0)));
  const int order = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bump_derivatives(kSpec, times, order));
  }
}
BENCHMARK(BM_BumpDerivatives)->Args({1001, 10})->Args({1001, 40})->Unit(benchmark::kMillisecond);

void BM_EtaSequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_sequence(aluminum(), kRod, n));
  }
}
BENCHMARK(BM_EtaSequence)->Arg(40)->Arg(1000);

void BM_InputSignal(benchmark::State& state) {
  const auto& table = table40();
  const auto diag = eta_sequence(aluminum(), kRod, 40);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(input_signal(diag, table, aluminum(), kSpec, n));
  }
}
BENCHMARK(BM_InputSignal)->Arg(5)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_SimulateAluminum(benchmark::State& state) {
  const auto diag = eta_sequence(aluminum(), kRod, 40);
  const auto u = input_signal(diag, table40(), aluminum(), kSpec, 5);
  SimulationConfig cfg;
  cfg.material = aluminum();
  cfg.geometry = kRod;
  cfg.probes = {0.05, 0.1, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(cfg, u));
  }
}
BENCHMARK(BM_SimulateAluminum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
