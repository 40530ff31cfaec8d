#pragma once

#include <cstdint>
#include <vector>

#include "qrao/circuit.hpp"
#include "qrao/pauli.hpp"
#include "qrao/state.hpp"

namespace qrao {

// Depolarizing-noise configuration. `global_p` / `global_applications`
// drive the channel rho -> p^N rho + (1-p^N) I/2^n applied after the
// circuit; `cnot_error` is the two-qubit depolarizing probability applied
// after every CNOT.
struct NoiseParams {
    double global_p = 1.0;
    long global_applications = 0;
    double cnot_error = 0.0;

    bool any_noise() const {
        return cnot_error > 0.0 || (global_applications > 0 && global_p < 1.0);
    }
    void validate() const;
};

// Circuit lowered to simulation ops with per-CNOT noise interleaved.
struct SimOp {
    enum class Kind { Gate1Q, Cnot, DepolarizePair };
    Kind kind;
    GateKind gate = GateKind::RY;
    int q0 = 0;
    int q1 = -1;
    int param_index = -1;
    double fixed_angle = 0.0;
    double eps = 0.0;
};

std::vector<SimOp> lower_circuit(const Circuit& c, const NoiseParams& noise);

Mat2 gate_matrix(GateKind kind, double angle);
Mat2 adjoint(const Mat2& m);

// |psi> = gates applied in order to |0...0>.
StateVector run_pure(const Circuit& c, const std::vector<double>& params);

// Density-matrix evolution with two-qubit depolarizing after each CNOT
// and the global channel at the end.
DensityMatrix run_density(const Circuit& c, const std::vector<double>& params,
                          const NoiseParams& noise);

// D_p^N(rho) = p^N rho + (1 - p^N) I/2^n.
DensityMatrix global_depolarize(const DensityMatrix& rho, double p, long applications);

// <H> = sum_terms coeff * Tr(P rho).
double expectation_exact(const StateVector& psi, const Hamiltonian& h);
double expectation_exact(const DensityMatrix& rho, const Hamiltonian& h);
double expectation_exact(const QuantumState& s, const Hamiltonian& h);

// One shot-sampled Pauli estimate: rotate to the measurement basis
// (X: H, Y: S^dagger then H, Z: nothing), sample the computational
// basis, count odd-parity outcomes h over the string's support and
// return 1 - 2h/S. The identity string returns exactly 1 without
// consuming shots.
struct PauliSample {
    double estimate = 1.0;
    long ones = 0;
    long shots = 0;
    std::vector<std::uint8_t> outcomes;  // parity bit per shot
};

PauliSample sample_pauli(const QuantumState& state, const PauliString& ps, long shots,
                         std::uint64_t seed);

// Measurement table across nodes: outcomes[node][shot] in {0,1}.
struct ShotTable {
    long shots = 0;
    std::vector<std::vector<std::uint8_t>> columns;

    long ones(int node) const;
};

}  // namespace qrao
