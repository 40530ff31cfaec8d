#include "qrao/circuit.hpp"

#include <stdexcept>

namespace qrao {

std::string gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::CNOT: return "cx";
    }
    throw std::logic_error("invalid GateKind");
}

int Circuit::cnot_count() const {
    int n = 0;
    for (const auto& g : gates) {
        if (g.kind == GateKind::CNOT) ++n;
    }
    return n;
}

void Circuit::validate() const {
    int param_slots = 0;
    for (const auto& g : gates) {
        if (g.q0 < 0 || g.q0 >= num_qubits) {
            throw std::invalid_argument("circuit: qubit index out of range");
        }
        if (g.kind == GateKind::CNOT) {
            if (g.q1 < 0 || g.q1 >= num_qubits || g.q1 == g.q0) {
                throw std::invalid_argument("circuit: bad CNOT qubit pair");
            }
            if (g.is_parameterized()) {
                throw std::invalid_argument("circuit: CNOT cannot be parameterized");
            }
        }
        if (g.is_parameterized()) {
            if (g.kind != GateKind::RY && g.kind != GateKind::RZ) {
                throw std::invalid_argument("circuit: only RY/RZ take parameters");
            }
            if (g.param_index != param_slots) {
                throw std::invalid_argument("circuit: parameter slots must be consecutive");
            }
            ++param_slots;
        }
    }
    if (param_slots != num_params) {
        throw std::invalid_argument("circuit: declared parameter count mismatch");
    }
}

Circuit build_hea(int num_qubits, int layers) {
    if (num_qubits < 1) {
        throw std::invalid_argument("build_hea: need at least one qubit");
    }
    if (layers < 1) {
        throw std::invalid_argument("build_hea: need at least one layer");
    }
    Circuit c;
    c.num_qubits = num_qubits;
    int slot = 0;
    auto rotation_layer = [&]() {
        for (int q = 0; q < num_qubits; ++q) {
            c.gates.push_back({GateKind::RY, q, -1, slot++, 0.0});
            c.gates.push_back({GateKind::RZ, q, -1, slot++, 0.0});
        }
    };
    for (int l = 0; l < layers; ++l) {
        rotation_layer();
        for (int q = 0; q + 1 < num_qubits; ++q) {
            c.gates.push_back({GateKind::CNOT, q, q + 1, -1, 0.0});
        }
    }
    rotation_layer();
    c.num_params = slot;
    c.validate();
    return c;
}

void to_json(nlohmann::json& j, const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : c.gates) {
        nlohmann::json entry{{"gate", gate_kind_name(g.kind)}};
        if (g.kind == GateKind::CNOT) {
            entry["control"] = g.q0;
            entry["target"] = g.q1;
        } else {
            entry["qubit"] = g.q0;
        }
        if (g.is_parameterized()) {
            entry["param"] = g.param_index;
        } else if (g.kind == GateKind::RY || g.kind == GateKind::RZ) {
            entry["angle"] = g.fixed_angle;
        }
        gates.push_back(std::move(entry));
    }
    j = nlohmann::json{
        {"num_qubits", c.num_qubits}, {"num_params", c.num_params}, {"gates", gates}};
}

}  // namespace qrao
