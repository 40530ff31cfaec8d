#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qrao {

enum class GateKind { RY, RZ, H, S, Sdg, CNOT };

std::string gate_kind_name(GateKind k);

struct Gate {
    GateKind kind;
    int q0 = 0;           // target (single-qubit) or control (CNOT)
    int q1 = -1;          // CNOT target
    int param_index = -1; // slot into the parameter vector, -1 if fixed
    double fixed_angle = 0.0;

    bool is_parameterized() const { return param_index >= 0; }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
    int num_params = 0;

    int cnot_count() const;
    void validate() const;
};

// Hardware-efficient ansatz with linear entanglement: per layer, RY then
// RZ on every qubit followed by the CNOT chain 0->1, ..., n-2->n-1; one
// final RY+RZ rotation layer closes the circuit. Parameter count is
// 2n(l+1), CNOT count l(n-1).
Circuit build_hea(int num_qubits, int layers);

void to_json(nlohmann::json& j, const Circuit& c);

}  // namespace qrao
