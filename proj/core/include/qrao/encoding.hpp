#pragma once

#include <vector>

#include <json.hpp>

#include "qrao/graph.hpp"
#include "qrao/pauli.hpp"
#include "qrao/state.hpp"

namespace qrao {

// Node -> (qubit, Pauli axis) map for the (3,1)-QRAC encoding. At most
// three nodes share a qubit, adjacent nodes never do, and each
// (qubit, axis) slot is used at most once.
struct QracAssignment {
    struct Slot {
        int qubit = -1;
        PauliAxis axis = PauliAxis::X;
    };
    std::vector<Slot> node_to_slot;
    int num_qubits = 0;

    int num_nodes() const { return static_cast<int>(node_to_slot.size()); }
    PauliString node_pauli(int node) const;

    // Checks the invariants above against a graph.
    void validate(const Graph& g) const;
};

// H = sum_edges [ I/2 - Z_i Z_j / 2 ] on |V| qubits; the max eigenvalue
// equals the max cut and eigenstates are computational basis states.
Hamiltonian build_ising_hamiltonian(const Graph& g);

// Greedy packing: nodes in descending degree order, each placed on the
// lowest-indexed qubit that has a free axis slot and holds no neighbor;
// axes are handed out in X, Y, Z order. Deterministic for a fixed graph.
QracAssignment assign_qrac(const Graph& g);

// H = sum_edges [ I/2 - (3/2) P_i P_j ] with P the node Paulis from the
// assignment. Relaxation: max eigenvalue can exceed the max cut.
Hamiltonian build_qrac_hamiltonian(const Graph& g, const QracAssignment& a);

// Product state F(m): per qubit (1/2)(I + ((-1)^x1 X + (-1)^x2 Y +
// (-1)^x3 Z)/sqrt(3)); axis slots without an assigned node default to
// bit 0. Satisfies Tr(F(m) H_qrac) = cut(m).
DensityMatrix qrac_product_state(const BitAssignment& m, const QracAssignment& a);

// Largest eigenvalue of the dense Hermitian matrix. Diagonal (Z-only)
// operators take an exact fast path; everything else goes through a
// dense eigensolve, guarded by a qubit cap.
double max_eigenvalue(const Hamiltonian& h, int dense_qubit_cap = 14);

// Dense 2^n x 2^n matrix of the operator; used by the eigensolve and by
// small-scale checks. Guarded by the same cap.
std::vector<std::vector<complex_t>> to_dense_matrix(const Hamiltonian& h, int dense_qubit_cap = 14);

void to_json(nlohmann::json& j, const QracAssignment& a);
void from_json(const nlohmann::json& j, QracAssignment& a);

}  // namespace qrao
