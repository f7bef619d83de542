#include <benchmark/benchmark.h>

#include <random>

#include "iftsim/ising.hpp"
#include "iftsim/lanczos.hpp"
#include "iftsim/momentum_basis.hpp"
#include "iftsim/pool.hpp"
#include "iftsim/simulate.hpp"
#include "iftsim/trotter.hpp"

using namespace ift;

namespace {

StateVector random_state(int L, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    StateVector psi(L);
    for (auto& a : psi.amp) a = cd{g(rng), g(rng)};
    psi.normalize();
    return psi;
}

void BM_single_qubit_gate(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    auto psi = random_state(L, 1);
    Gate g = Gate::one(GateKind::RY, L / 2, 0.3);
    for (auto _ : state) {
        apply_gate(psi, g);
        benchmark::DoNotOptimize(psi.amp.data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << L));
}
BENCHMARK(BM_single_qubit_gate)->Arg(16)->Arg(20);

void BM_rzz_gate(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    auto psi = random_state(L, 2);
    Gate g = Gate::two(GateKind::RZZ, 3, 4, 0.5);
    for (auto _ : state) {
        apply_gate(psi, g);
        benchmark::DoNotOptimize(psi.amp.data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << L));
}
BENCHMARK(BM_rzz_gate)->Arg(16)->Arg(20);

void BM_energy_expectation(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    IsingModel m{L, 1.25, 0.15, Boundary::PBC};
    auto terms = hamiltonian_terms(m);
    auto psi = random_state(L, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expval(psi, terms));
    }
}
BENCHMARK(BM_energy_expectation)->Arg(12)->Arg(16);

void BM_trotter_step(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    IsingModel m{L, 1.25, 0.15, Boundary::PBC};
    auto step = trotter_step_circuit(m, 0.25);
    auto psi = random_state(L, 4);
    for (auto _ : state) {
        apply_unitary(psi, step);
        benchmark::DoNotOptimize(psi.amp.data());
    }
}
BENCHMARK(BM_trotter_step)->Arg(12)->Arg(16);

void BM_pool_exponential(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    auto pool = build_pool(PoolId::O3, L, Boundary::PBC);
    auto psi = random_state(L, 5);
    for (auto _ : state) {
        apply_pool_exponential(pool.ops[2], 0.2, psi); // the bond-pair operator
        benchmark::DoNotOptimize(psi.amp.data());
    }
}
BENCHMARK(BM_pool_exponential)->Arg(10)->Arg(14);

void BM_momentum_weights(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    auto psi = random_state(L, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(momentum_block_weights(psi, L));
    }
}
BENCHMARK(BM_momentum_weights)->Arg(10)->Arg(14);

void BM_block_ground_state(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    IsingModel m{L, 1.25, 0.15, Boundary::PBC};
    auto terms = hamiltonian_terms(m);
    auto orbits = build_orbits(L);
    auto basis = momentum_basis(orbits, 0);
    auto Hk = block_matrix(orbits, basis, terms);
    for (auto _ : state) {
        LanczosOptions opts;
        opts.n_eigs = 2;
        benchmark::DoNotOptimize(lowest_eigenpairs(Hk, opts));
    }
}
BENCHMARK(BM_block_ground_state)->Arg(12);

} // namespace

BENCHMARK_MAIN();
