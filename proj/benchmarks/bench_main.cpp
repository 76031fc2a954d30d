#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qsaw/classical.hpp"
#include "qsaw/gates.hpp"
#include "qsaw/measurement.hpp"
#include "qsaw/params.hpp"
#include "qsaw/propagator.hpp"

namespace {

using namespace qsaw;

MapParams torus_params(int n, int L) {
    ParamSpec spec;
    spec.K = std::numbers::sqrt2;
    spec.n = n;
    spec.L = L;
    return derive_params(spec);
}

void BM_spectral_step(benchmark::State& state) {
    MapParams p = torus_params(static_cast<int>(state.range(0)), 1);
    StateVector psi = init_momentum_state(p);
    for (auto _ : state) {
        floquet_step(psi);
        benchmark::DoNotOptimize(psi.amp.data());
    }
    state.SetItemsProcessed(state.iterations() * p.N);
}
BENCHMARK(BM_spectral_step)->Arg(6)->Arg(10)->Arg(14);

void BM_gate_step(benchmark::State& state) {
    MapParams p = torus_params(static_cast<int>(state.range(0)), 1);
    const GateList circuit = build_floquet_circuit(p);
    StateVector psi = init_momentum_state(p);
    for (auto _ : state) {
        apply_gates(psi, circuit);
        benchmark::DoNotOptimize(psi.amp.data());
    }
    state.SetItemsProcessed(state.iterations() * circuit.gate_count());
}
BENCHMARK(BM_gate_step)->Arg(6)->Arg(10);

void BM_build_floquet_circuit(benchmark::State& state) {
    MapParams p = torus_params(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        GateList circuit = build_floquet_circuit(p);
        benchmark::DoNotOptimize(circuit.gates.data());
    }
}
BENCHMARK(BM_build_floquet_circuit)->Arg(10);

void BM_classical_ensemble(benchmark::State& state) {
    MapParams p;
    p.K = std::numbers::sqrt2;
    p.T = 1.0;
    p.k = p.K;
    p.boundary = BoundaryMode::Cylinder;
    const std::int64_t n_traj = state.range(0);
    const std::vector<std::int64_t> record{100};
    for (auto _ : state) {
        auto moments = ensemble_evolve(p, n_traj, 100, 1, record);
        benchmark::DoNotOptimize(moments.data());
    }
    state.SetItemsProcessed(state.iterations() * n_traj * 100);
}
BENCHMARK(BM_classical_ensemble)->Arg(1000)->Arg(10000);

void BM_measurement_batch(benchmark::State& state) {
    MapParams p = torus_params(6, 10);
    StateVector psi = init_momentum_state(p);
    for (int t = 0; t < 50; ++t) floquet_step(psi);
    const std::int64_t n_m = state.range(0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto hist = measure_state(psi, n_m, 2, ++seed);
        benchmark::DoNotOptimize(hist.counts);
    }
    state.SetItemsProcessed(state.iterations() * n_m);
}
BENCHMARK(BM_measurement_batch)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
