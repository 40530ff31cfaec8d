#include <doctest.h>

#include <cmath>

#include "qrao/circuit.hpp"
#include "qrao/encoding.hpp"
#include "qrao/graph.hpp"
#include "qrao/rng.hpp"
#include "qrao/simulate.hpp"
#include "qrao/vqe.hpp"

using namespace qrao;

namespace {

constexpr double kPi = 3.14159265358979323846;

double angle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

// Reference NFT driver that re-simulates the full noisy circuit for every
// probe; the production density-frame engine must reproduce it exactly.
struct NaiveNftRun {
    std::vector<double> params;
    std::vector<double> trace;
    double energy = 0.0;
};

NaiveNftRun naive_noisy_nft(const Hamiltonian& h, const VqeConfig& cfg, const NoiseParams& noise) {
    const Circuit circuit = build_hea(h.num_qubits, cfg.layers);
    NaiveNftRun run;
    run.params = vqe_initial_params(circuit.num_params, cfg.seed);

    auto energy_at = [&](const std::vector<double>& p) {
        return expectation_exact(run_density(circuit, p, noise), h);
    };

    double current = energy_at(run.params);
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
        for (int j = 0; j < circuit.num_params; ++j) {
            auto evaluate = [&](double theta) {
                std::vector<double> probe = run.params;
                probe[static_cast<std::size_t>(j)] = theta;
                return energy_at(probe);
            };
            const NftStep step =
                nft_update(evaluate, run.params[static_cast<std::size_t>(j)], current);
            run.params[static_cast<std::size_t>(j)] = step.theta;
            current = step.energy;
            run.trace.push_back(current);
        }
    }
    run.energy = energy_at(run.params);
    return run;
}

}  // namespace

TEST_SUITE("vqe") {

TEST_CASE("nft_update on exact sinusoids") {
    auto cosine = [](double theta) { return std::cos(theta); };
    const NftStep s1 = nft_update(cosine, 1.0, std::cos(1.0));
    CHECK(angle_distance(s1.theta, 0.0) < 1e-9);
    CHECK(s1.energy == doctest::Approx(1.0));

    auto flat = [](double) { return 2.0; };
    const NftStep s2 = nft_update(flat, 0.8, 2.0);
    CHECK(s2.theta == doctest::Approx(0.8));
    CHECK(s2.energy == doctest::Approx(2.0));

    auto shifted = [](double theta) { return -std::cos(theta - 0.3); };
    const NftStep s3 = nft_update(shifted, 1.7, shifted(1.7));
    CHECK(angle_distance(s3.theta, 0.3 + kPi) < 1e-9);
    CHECK(s3.energy == doctest::Approx(1.0));
}

TEST_CASE("nft_update recovers random sinusoid maxima") {
    Rng rng = make_rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = 0.05 + 2.0 * uniform_double(rng);
        const double b = 2.0 * kPi * uniform_double(rng);
        const double c = 4.0 * uniform_double(rng) - 2.0;
        const double theta0 = 2.0 * kPi * uniform_double(rng);
        auto f = [&](double theta) { return a * std::cos(theta - b) + c; };
        const NftStep step = nft_update(f, theta0, f(theta0));
        CHECK(angle_distance(step.theta, b) < 1e-9);
        CHECK(step.energy == doctest::Approx(c + a).epsilon(1e-12));
    }
}

TEST_CASE("single-qubit Z maximization reaches 1") {
    Hamiltonian h;
    h.num_qubits = 1;
    h.add_term(1.0, PauliString::single(1, 0, PauliAxis::Z));
    VqeConfig cfg;
    cfg.layers = 1;
    cfg.sweeps = 2;
    cfg.exact = true;
    cfg.seed = 3;
    const VqeResult r = run_vqe(h, cfg, NoiseParams{});
    CHECK(r.energy == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.energy_ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("single-edge Ising reaches the max cut") {
    const Graph g = Graph::make(2, {{0, 1}});
    const Hamiltonian h = build_ising_hamiltonian(g);
    VqeConfig cfg;
    cfg.layers = 1;
    cfg.sweeps = 16;  // coordinate ascent converges geometrically
    cfg.exact = true;
    cfg.seed = 12;
    const VqeResult r = run_vqe(h, cfg, NoiseParams{});
    CHECK(std::abs(r.energy - 1.0) < 1e-6);
}

TEST_CASE("exact traces are monotone non-decreasing, noiseless and noisy") {
    const Graph g = generate_random_regular(6, 3, 2);
    VqeConfig cfg;
    cfg.layers = 2;
    cfg.sweeps = 2;
    cfg.exact = true;
    cfg.seed = 5;

    const VqeResult pure = run_vqe(build_ising_hamiltonian(g), cfg, NoiseParams{});
    REQUIRE(!pure.energy_trace.empty());
    for (std::size_t i = 1; i < pure.energy_trace.size(); ++i) {
        CHECK(pure.energy_trace[i] >= pure.energy_trace[i - 1] - 1e-9);
    }

    NoiseParams noise;
    noise.cnot_error = 0.02;
    const QracAssignment a = assign_qrac(g);
    const VqeResult noisy = run_vqe(build_qrac_hamiltonian(g, a), cfg, noise);
    for (std::size_t i = 1; i < noisy.energy_trace.size(); ++i) {
        CHECK(noisy.energy_trace[i] >= noisy.energy_trace[i - 1] - 1e-9);
    }
}

TEST_CASE("density-frame engine matches the naive full-simulation oracle") {
    const Graph g = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    const Hamiltonian h = build_ising_hamiltonian(g);

    VqeConfig cfg;
    cfg.layers = 1;
    cfg.sweeps = 2;
    cfg.exact = true;
    cfg.seed = 21;
    NoiseParams noise;
    noise.cnot_error = 0.05;
    noise.global_p = 0.995;
    noise.global_applications = 3;

    const VqeResult fast = run_vqe(h, cfg, noise);
    const NaiveNftRun naive = naive_noisy_nft(h, cfg, noise);

    REQUIRE(fast.energy_trace.size() == naive.trace.size());
    for (std::size_t i = 0; i < naive.trace.size(); ++i) {
        CHECK(fast.energy_trace[i] == doctest::Approx(naive.trace[i]).epsilon(1e-8));
    }
    REQUIRE(fast.final_params.size() == naive.params.size());
    for (std::size_t i = 0; i < naive.params.size(); ++i) {
        CHECK(angle_distance(fast.final_params[i], naive.params[i]) < 1e-7);
    }
    CHECK(fast.energy == doctest::Approx(naive.energy).epsilon(1e-8));
}

TEST_CASE("noisy candidate state reproduces the reported energy") {
    const Graph g = generate_random_regular(6, 3, 9);
    const QracAssignment a = assign_qrac(g);
    const Hamiltonian h = build_qrac_hamiltonian(g, a);
    VqeConfig cfg;
    cfg.layers = 2;
    cfg.sweeps = 1;
    cfg.exact = true;
    cfg.seed = 31;
    NoiseParams noise;
    noise.cnot_error = 0.01;
    const VqeResult r = run_vqe(h, cfg, noise);
    CHECK(expectation_exact(r.candidate_state, h) == doctest::Approx(r.energy).epsilon(1e-9));
    CHECK(std::holds_alternative<DensityMatrix>(r.candidate_state));
    // noisy optimum cannot beat the noiseless spectral bound
    CHECK(r.energy <= max_eigenvalue(h) + 1e-9);
}

TEST_CASE("shot-based optimization approaches the exact optimum with many shots") {
    const Graph g = Graph::make(2, {{0, 1}});
    const Hamiltonian h = build_ising_hamiltonian(g);
    VqeConfig exact_cfg;
    exact_cfg.layers = 1;
    exact_cfg.sweeps = 1;
    exact_cfg.exact = true;
    exact_cfg.seed = 8;
    const VqeResult exact = run_vqe(h, exact_cfg, NoiseParams{});

    VqeConfig shot_cfg = exact_cfg;
    shot_cfg.exact = false;
    shot_cfg.shots_per_term = 1000000;
    const VqeResult sampled = run_vqe(h, shot_cfg, NoiseParams{});
    CHECK(sampled.energy == doctest::Approx(exact.energy).epsilon(0.01));
    CHECK(sampled.shots_used > 0);
}

TEST_CASE("energy ratio definition and guards") {
    const Graph g = generate_random_regular(6, 3, 13);
    const Hamiltonian h = build_ising_hamiltonian(g);
    const long opt = max_cut_bruteforce(g).value;

    VqeResult fake;
    fake.energy = static_cast<double>(opt);
    CHECK(energy_ratio(fake, h) == doctest::Approx(1.0));

    // maximally mixed candidate: <H> = |E|/2
    fake.energy = expectation_exact(DensityMatrix::maximally_mixed(6), h);
    CHECK(energy_ratio(fake, h) ==
          doctest::Approx(0.5 * g.num_edges() / static_cast<double>(opt)));

    Hamiltonian zero;
    zero.num_qubits = 2;
    CHECK_THROWS_AS(energy_ratio(fake, zero), std::invalid_argument);
}

TEST_CASE("vqe energy ratio stays within [0, 1] under exact evaluation") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Graph g = generate_random_regular(8, 3, seed);
        const QracAssignment a = assign_qrac(g);
        VqeConfig cfg;
        cfg.layers = 2;
        cfg.sweeps = 2;
        cfg.exact = true;
        cfg.seed = seed;
        const VqeResult r = run_vqe(build_qrac_hamiltonian(g, a), cfg, NoiseParams{});
        CHECK(r.energy_ratio >= 0.0);
        CHECK(r.energy_ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("config validation") {
    VqeConfig cfg;
    cfg.layers = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = VqeConfig{};
    cfg.sweeps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = VqeConfig{};
    cfg.shots_per_term = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.exact = true;  // exact mode ignores the shot budget
    CHECK_NOTHROW(cfg.validate());

    Hamiltonian h;
    h.num_qubits = 15;
    h.add_term(1.0, PauliString::single(15, 0, PauliAxis::Z));
    NoiseParams noise;
    noise.cnot_error = 0.01;
    VqeConfig small;
    small.exact = true;
    CHECK_THROWS_AS(run_vqe(h, small, noise), std::invalid_argument);  // density cap
}

}  // TEST_SUITE
