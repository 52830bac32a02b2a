#include <qrabi/qrabi.hpp>

#include <benchmark/benchmark.h>

using namespace qrabi;

namespace {

ModelParams params(int d, double g) {
    ModelParams p;
    p.d = d;
    p.Omega1 = 0.1;
    p.Omega2 = 0.1;
    p.g1 = g;
    p.g2 = g;
    return p.with_adequate_truncation();
}

void BM_BuildHamiltonian(benchmark::State& state) {
    const ModelParams p = params(static_cast<int>(state.range(0)), 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(build_full_hamiltonian(p));
    state.counters["dim"] = static_cast<double>(p.dim());
}
BENCHMARK(BM_BuildHamiltonian)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_Eigh(benchmark::State& state) {
    const OperatorMatrix H = build_full_hamiltonian(params(static_cast<int>(state.range(0)), 0.3));
    for (auto _ : state) benchmark::DoNotOptimize(eigh(H));
    state.counters["dim"] = static_cast<double>(H.dim());
}
BENCHMARK(BM_Eigh)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_GroundNegativity(benchmark::State& state) {
    const ModelParams p = params(static_cast<int>(state.range(0)), 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(ground_negativity(p));
}
BENCHMARK(BM_GroundNegativity)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

// one slice of a 5000-step ramp
void BM_AdiabaticSlice(benchmark::State& state) {
    const ModelParams end = params(static_cast<int>(state.range(0)), 0.5);
    const RampSchedule s = RampSchedule::scheme_I(end, 500.0 / 5000.0);
    const StateVector target = ghz_state_with_parity(end, 1);
    for (auto _ : state) benchmark::DoNotOptimize(adiabatic_run(s, 1, target));
}
BENCHMARK(BM_AdiabaticSlice)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
