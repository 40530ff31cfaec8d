#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

#include "qrao/pauli.hpp"
#include "qrao/simulate.hpp"
#include "qrao/state.hpp"

namespace qrao {

struct VqeConfig {
    int layers = 3;
    int sweeps = 2;
    long shots_per_term = 1024;
    bool exact = false;  // evaluate energies exactly instead of sampling
    std::uint64_t seed = 0;

    void validate() const;
};

struct VqeResult {
    std::vector<double> final_params;
    QuantumState candidate_state;
    double energy = 0.0;
    std::vector<double> energy_trace;
    double energy_ratio = 0.0;  // NaN when the max eigenvalue is out of reach
    long shots_used = 0;
};

struct NftStep {
    double theta = 0.0;
    double energy = 0.0;
};

// Uniform [0, 2pi) starting parameters drawn from the run seed; exposed
// so external reruns can reproduce an optimization trajectory.
std::vector<double> vqe_initial_params(int count, std::uint64_t seed);

// Single NFT coordinate update. The energy as a function of one rotation
// angle is exactly a*cos(theta - b) + c; the caller supplies E(theta0) so
// only the two probes at theta0 +- pi/2 are evaluated. Returns the argmax
// of the reconstructed sinusoid and its fitted maximum; a flat direction
// (a ~ 0) keeps theta0.
NftStep nft_update(const std::function<double(double)>& evaluate, double theta0, double e0);

// Maximizes <H> over the hardware-efficient ansatz with sequential NFT
// sweeps. Parameters start uniform in [0, 2pi) from the seed; sweep order
// is circuit order. Exact noiseless runs use the statevector backend,
// exact noisy runs the density backend, shot-based runs sample each Pauli
// term with shots_per_term shots per evaluation.
VqeResult run_vqe(const Hamiltonian& h, const VqeConfig& cfg, const NoiseParams& noise);

// result.energy / max_eigenvalue(h); rejects Hamiltonians whose maximum
// eigenvalue vanishes.
double energy_ratio(const VqeResult& result, const Hamiltonian& h);

void to_json(nlohmann::json& j, const VqeResult& r);

}  // namespace qrao
