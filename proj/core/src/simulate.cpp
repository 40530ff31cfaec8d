#include "qrao/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qrao/rng.hpp"

namespace qrao {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

void check_params(const Circuit& c, const std::vector<double>& params) {
    if (static_cast<int>(params.size()) != c.num_params) {
        throw std::invalid_argument("circuit expects " + std::to_string(c.num_params) +
                                    " parameters, got " + std::to_string(params.size()));
    }
}

double op_angle(const SimOp& op, const std::vector<double>& params) {
    return op.param_index >= 0 ? params[op.param_index] : op.fixed_angle;
}

}  // namespace

void NoiseParams::validate() const {
    if (global_p < 0.0 || global_p > 1.0) {
        throw std::invalid_argument("NoiseParams: global_p outside [0, 1]");
    }
    if (global_applications < 0) {
        throw std::invalid_argument("NoiseParams: negative application count");
    }
    if (cnot_error < 0.0 || cnot_error > 1.0) {
        throw std::invalid_argument("NoiseParams: cnot_error outside [0, 1]");
    }
}

std::vector<SimOp> lower_circuit(const Circuit& c, const NoiseParams& noise) {
    noise.validate();
    c.validate();
    std::vector<SimOp> ops;
    ops.reserve(c.gates.size() * 2);
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::CNOT) {
            SimOp op;
            op.kind = SimOp::Kind::Cnot;
            op.q0 = g.q0;
            op.q1 = g.q1;
            ops.push_back(op);
            if (noise.cnot_error > 0.0) {
                SimOp noisy;
                noisy.kind = SimOp::Kind::DepolarizePair;
                noisy.q0 = g.q0;
                noisy.q1 = g.q1;
                noisy.eps = noise.cnot_error;
                ops.push_back(noisy);
            }
        } else {
            SimOp op;
            op.kind = SimOp::Kind::Gate1Q;
            op.gate = g.kind;
            op.q0 = g.q0;
            op.param_index = g.param_index;
            op.fixed_angle = g.fixed_angle;
            ops.push_back(op);
        }
    }
    return ops;
}

Mat2 gate_matrix(GateKind kind, double angle) {
    switch (kind) {
        case GateKind::RY: {
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            return {complex_t{c, 0}, complex_t{-s, 0}, complex_t{s, 0}, complex_t{c, 0}};
        }
        case GateKind::RZ: {
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            return {complex_t{c, -s}, complex_t{0, 0}, complex_t{0, 0}, complex_t{c, s}};
        }
        case GateKind::H:
            return {complex_t{kSqrtHalf, 0}, complex_t{kSqrtHalf, 0}, complex_t{kSqrtHalf, 0},
                    complex_t{-kSqrtHalf, 0}};
        case GateKind::S:
            return {complex_t{1, 0}, complex_t{0, 0}, complex_t{0, 0}, complex_t{0, 1}};
        case GateKind::Sdg:
            return {complex_t{1, 0}, complex_t{0, 0}, complex_t{0, 0}, complex_t{0, -1}};
        case GateKind::CNOT:
            break;
    }
    throw std::invalid_argument("gate_matrix: not a single-qubit gate");
}

Mat2 adjoint(const Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

StateVector run_pure(const Circuit& c, const std::vector<double>& params) {
    check_params(c, params);
    c.validate();
    StateVector psi = StateVector::zero(c.num_qubits);
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::CNOT) {
            apply_cnot(psi, g.q0, g.q1);
        } else {
            const double angle = g.is_parameterized() ? params[g.param_index] : g.fixed_angle;
            apply_1q(psi, g.q0, gate_matrix(g.kind, angle));
        }
    }
    return psi;
}

DensityMatrix run_density(const Circuit& c, const std::vector<double>& params,
                          const NoiseParams& noise) {
    check_params(c, params);
    const auto ops = lower_circuit(c, noise);
    DensityMatrix rho = DensityMatrix::zero_state(c.num_qubits);
    for (const auto& op : ops) {
        switch (op.kind) {
            case SimOp::Kind::Gate1Q:
                apply_1q(rho, op.q0, gate_matrix(op.gate, op_angle(op, params)));
                break;
            case SimOp::Kind::Cnot:
                apply_cnot(rho, op.q0, op.q1);
                break;
            case SimOp::Kind::DepolarizePair:
                depolarize_two_qubit(rho, op.q0, op.q1, op.eps);
                break;
        }
    }
    global_depolarize_inplace(rho, noise.global_p, noise.global_applications);
    return rho;
}

DensityMatrix global_depolarize(const DensityMatrix& rho, double p, long applications) {
    DensityMatrix out = rho;
    global_depolarize_inplace(out, p, applications);
    return out;
}

double expectation_exact(const StateVector& psi, const Hamiltonian& h) {
    if (h.num_qubits != psi.num_qubits) {
        throw std::invalid_argument("expectation_exact: qubit count mismatch");
    }
    double e = 0.0;
    for (const auto& [coeff, p] : h.terms) e += coeff * expectation(psi, p);
    return e;
}

double expectation_exact(const DensityMatrix& rho, const Hamiltonian& h) {
    if (h.num_qubits != rho.num_qubits) {
        throw std::invalid_argument("expectation_exact: qubit count mismatch");
    }
    double e = 0.0;
    for (const auto& [coeff, p] : h.terms) e += coeff * expectation(rho, p);
    return e;
}

double expectation_exact(const QuantumState& s, const Hamiltonian& h) {
    return std::visit([&](const auto& x) { return expectation_exact(x, h); }, s);
}

PauliSample sample_pauli(const QuantumState& state, const PauliString& ps, long shots,
                         std::uint64_t seed) {
    if (ps.num_qubits != state_num_qubits(state)) {
        throw std::invalid_argument("sample_pauli: qubit count mismatch");
    }
    PauliSample result;
    if (ps.is_identity()) {
        return result;  // Tr(I rho) = 1 exactly, no sampling needed
    }
    if (shots < 1) {
        throw std::invalid_argument("sample_pauli: shots must be >= 1");
    }

    // Rotate a working copy into the measurement basis.
    QuantumState work = state;
    std::uint64_t support = 0;
    for (const auto& [q, axis] : ps.factors) {
        support |= std::uint64_t{1} << q;
        auto rotate = [&](const Mat2& m) {
            std::visit([&](auto& x) { apply_1q(x, q, m); }, work);
        };
        switch (axis) {
            case PauliAxis::X:
                rotate(gate_matrix(GateKind::H, 0.0));
                break;
            case PauliAxis::Y:
                rotate(gate_matrix(GateKind::Sdg, 0.0));
                rotate(gate_matrix(GateKind::H, 0.0));
                break;
            case PauliAxis::Z:
                break;
        }
    }

    const std::vector<double> probs = basis_probabilities(work);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    const double total = cdf.back();
    if (total <= 0.0) {
        throw std::runtime_error("sample_pauli: state has vanishing probability mass");
    }

    Rng rng = make_rng(seed);
    result.shots = shots;
    result.outcomes.resize(static_cast<std::size_t>(shots));
    for (long s = 0; s < shots; ++s) {
        const double u = uniform_double(rng) * total;
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        const std::uint8_t bit =
            static_cast<std::uint8_t>(__builtin_popcountll(idx & support) & 1);
        result.outcomes[static_cast<std::size_t>(s)] = bit;
        result.ones += bit;
    }
    result.estimate =
        1.0 - 2.0 * static_cast<double>(result.ones) / static_cast<double>(result.shots);
    return result;
}

long ShotTable::ones(int node) const {
    const auto& col = columns.at(static_cast<std::size_t>(node));
    return std::accumulate(col.begin(), col.end(), 0L,
                           [](long acc, std::uint8_t b) { return acc + b; });
}

}  // namespace qrao
