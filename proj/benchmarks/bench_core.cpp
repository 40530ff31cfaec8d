#include <benchmark/benchmark.h>

#include "qrao/circuit.hpp"
#include "qrao/encoding.hpp"
#include "qrao/graph.hpp"
#include "qrao/rounding.hpp"
#include "qrao/simulate.hpp"
#include "qrao/vqe.hpp"

namespace {

using namespace qrao;

void BM_PureGate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = StateVector::zero(n);
    const Mat2 h = gate_matrix(GateKind::H, 0.0);
    for (auto _ : state) {
        apply_1q(psi, n / 2, h);
        benchmark::DoNotOptimize(psi.amps.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PureGate)->DenseRange(8, 20, 4);

void BM_DensityGate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    DensityMatrix rho = DensityMatrix::zero_state(n);
    const Mat2 ry = gate_matrix(GateKind::RY, 0.37);
    for (auto _ : state) {
        apply_1q(rho, n / 2, ry);
        benchmark::DoNotOptimize(rho.data.data());
    }
}
BENCHMARK(BM_DensityGate)->DenseRange(6, 12, 2);

void BM_DensityCnotWithNoise(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    DensityMatrix rho = DensityMatrix::zero_state(n);
    for (auto _ : state) {
        apply_cnot(rho, 0, 1);
        depolarize_two_qubit(rho, 0, 1, 0.01);
        benchmark::DoNotOptimize(rho.data.data());
    }
}
BENCHMARK(BM_DensityCnotWithNoise)->DenseRange(6, 12, 2);

void BM_RotationTraces(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = generate_random_regular(n, 3, 1);
    const Circuit c = build_hea(n, 1);
    const DensityMatrix rho = run_density(c, vqe_initial_params(c.num_params, 3), NoiseParams{});
    DensityMatrix obs = DensityMatrix::maximally_mixed(n);
    for (auto _ : state) {
        auto traces = rotation_traces(obs, rho, n / 2, PauliAxis::Y);
        benchmark::DoNotOptimize(traces);
    }
}
BENCHMARK(BM_RotationTraces)->DenseRange(6, 12, 2);

void BM_BruteForceMaxCut(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = generate_random_regular(n, 3, 7);
    for (auto _ : state) {
        auto best = max_cut_bruteforce(g);
        benchmark::DoNotOptimize(best.value);
    }
}
BENCHMARK(BM_BruteForceMaxCut)->DenseRange(8, 20, 4);

void BM_NoisyVqeSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = generate_random_regular(n, 3, 5);
    const Hamiltonian h = build_ising_hamiltonian(g);
    VqeConfig cfg;
    cfg.layers = 1;
    cfg.sweeps = 1;
    cfg.exact = true;
    cfg.seed = 9;
    NoiseParams noise;
    noise.cnot_error = 0.01;
    for (auto _ : state) {
        auto result = run_vqe(h, cfg, noise);
        benchmark::DoNotOptimize(result.energy);
    }
}
BENCHMARK(BM_NoisyVqeSweep)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_MagicRoundOnce(benchmark::State& state) {
    const Graph g = generate_random_regular(static_cast<int>(state.range(0)), 3, 11);
    const QracAssignment a = assign_qrac(g);
    const DensityMatrix f = qrac_product_state(max_cut_bruteforce(g).assignment, a);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto outcome = magic_round_once(QuantumState{f}, a, g, seed++);
        benchmark::DoNotOptimize(outcome.cut);
    }
}
BENCHMARK(BM_MagicRoundOnce)->DenseRange(6, 12, 3);

}  // namespace

BENCHMARK_MAIN();
