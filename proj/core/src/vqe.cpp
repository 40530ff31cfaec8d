#include "qrao/vqe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qrao/circuit.hpp"
#include "qrao/encoding.hpp"
#include "qrao/rng.hpp"

namespace qrao {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kPureQubitCap = 24;
constexpr int kDensityQubitCap = 14;

double wrap_angle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

PauliAxis rotation_generator(GateKind kind) {
    switch (kind) {
        case GateKind::RY: return PauliAxis::Y;
        case GateKind::RZ: return PauliAxis::Z;
        default: break;
    }
    throw std::logic_error("rotation_generator: not a rotation gate");
}

// Dense matrix of H in a DensityMatrix-shaped buffer, used as the
// Heisenberg-picture observable.
DensityMatrix dense_observable(const Hamiltonian& h) {
    DensityMatrix obs = DensityMatrix::zero_state(h.num_qubits);
    obs.data[0] = 0.0;
    const std::size_t d = obs.dim();
    for (const auto& [coeff, p] : h.terms) {
        const PauliAction act(p);
        for (std::size_t k = 0; k < d; ++k) {
            obs.at(k ^ act.flip_mask, k) += coeff * act.phase(k);
        }
    }
    return obs;
}

void apply_op_to_state(DensityMatrix& rho, const SimOp& op, double angle) {
    switch (op.kind) {
        case SimOp::Kind::Gate1Q:
            apply_1q(rho, op.q0, gate_matrix(op.gate, angle));
            break;
        case SimOp::Kind::Cnot:
            apply_cnot(rho, op.q0, op.q1);
            break;
        case SimOp::Kind::DepolarizePair:
            depolarize_two_qubit(rho, op.q0, op.q1, op.eps);
            break;
    }
}

// Observable transport. Pulling H back one op means H <- K^dagger(H);
// pushing forward inverts that. Unitary conjugation swaps U and
// U^dagger between the two directions; the two-qubit depolarizer is
// self-adjoint so pulling reuses the channel itself and pushing needs
// its inverse.
void pull_observable(DensityMatrix& obs, const SimOp& op, double angle) {
    switch (op.kind) {
        case SimOp::Kind::Gate1Q:
            apply_1q(obs, op.q0, adjoint(gate_matrix(op.gate, angle)));
            break;
        case SimOp::Kind::Cnot:
            apply_cnot(obs, op.q0, op.q1);
            break;
        case SimOp::Kind::DepolarizePair:
            depolarize_two_qubit(obs, op.q0, op.q1, op.eps);
            break;
    }
}

void push_observable(DensityMatrix& obs, const SimOp& op, double angle) {
    switch (op.kind) {
        case SimOp::Kind::Gate1Q:
            apply_1q(obs, op.q0, gate_matrix(op.gate, angle));
            break;
        case SimOp::Kind::Cnot:
            apply_cnot(obs, op.q0, op.q1);
            break;
        case SimOp::Kind::DepolarizePair:
            depolarize_two_qubit_inverse(obs, op.q0, op.q1, op.eps);
            break;
    }
}

// Exact noiseless optimization: every probe re-simulates the circuit on
// the statevector backend.
void optimize_pure(const Circuit& circuit, const Hamiltonian& h, const VqeConfig& cfg,
                   std::vector<double>& params, std::vector<double>& trace) {
    auto energy_at = [&](const std::vector<double>& p) {
        const StateVector psi = run_pure(circuit, p);
        return expectation_exact(psi, h);
    };

    double current = energy_at(params);
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
        for (int j = 0; j < circuit.num_params; ++j) {
            auto evaluate = [&](double theta) {
                std::vector<double> probe = params;
                probe[static_cast<std::size_t>(j)] = theta;
                return energy_at(probe);
            };
            const NftStep step = nft_update(evaluate, params[static_cast<std::size_t>(j)], current);
            params[static_cast<std::size_t>(j)] = step.theta;
            current = step.energy;
            trace.push_back(current);
        }
    }
}

// Shot-based optimization: every probe re-simulates and samples each
// Pauli term independently.
void optimize_sampled(const Circuit& circuit, const Hamiltonian& h, const VqeConfig& cfg,
                      const NoiseParams& noise, std::vector<double>& params,
                      std::vector<double>& trace, long& shots_used) {
    long eval_counter = 0;
    auto energy_at = [&](const std::vector<double>& p) {
        QuantumState state;
        if (noise.any_noise()) {
            state = run_density(circuit, p, noise);
        } else {
            state = run_pure(circuit, p);
        }
        const std::uint64_t eval_seed =
            derive_seed(cfg.seed, {0xE5A1u, static_cast<std::uint64_t>(eval_counter++)});
        double e = 0.0;
        long term_index = 0;
        for (const auto& [coeff, pauli] : h.terms) {
            const auto sample = sample_pauli(
                state, pauli, cfg.shots_per_term,
                derive_seed(eval_seed, {static_cast<std::uint64_t>(term_index++)}));
            e += coeff * sample.estimate;
            shots_used += sample.shots;
        }
        return e;
    };

    double current = energy_at(params);
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
        for (int j = 0; j < circuit.num_params; ++j) {
            auto evaluate = [&](double theta) {
                std::vector<double> probe = params;
                probe[static_cast<std::size_t>(j)] = theta;
                return energy_at(probe);
            };
            const NftStep step = nft_update(evaluate, params[static_cast<std::size_t>(j)], current);
            params[static_cast<std::size_t>(j)] = step.theta;
            current = step.energy;
            trace.push_back(current);
        }
    }
}

// Exact noisy optimization. Naively each probe would re-run the full
// density simulation; instead the sweep carries a moving frame
//   rho  = state with all ops before the current gate applied,
//   obs  = H pulled back through all ops after it,
// so E(theta) = Tr(obs . R(theta) rho R(theta)^dagger) reduces to three
// cached traces per parameter. Pushing the observable past an op always
// uses the angle it was pulled back with (the pre-sweep snapshot);
// parameters behind the frame enter through rho with their new values,
// which matches plain sequential NFT semantics.
void optimize_density_frame(const Circuit& circuit, const Hamiltonian& h, const VqeConfig& cfg,
                            const NoiseParams& noise, std::vector<double>& params,
                            std::vector<double>& trace) {
    const auto ops = lower_circuit(circuit, noise);
    std::vector<std::size_t> param_pos;
    param_pos.reserve(static_cast<std::size_t>(circuit.num_params));
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].kind == SimOp::Kind::Gate1Q && ops[i].param_index >= 0) {
            param_pos.push_back(i);
        }
    }

    double current = 0.0;
    bool have_current = false;

    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
        const std::vector<double> snapshot = params;
        auto snapshot_angle = [&](const SimOp& op) {
            return op.param_index >= 0 ? snapshot[static_cast<std::size_t>(op.param_index)]
                                       : op.fixed_angle;
        };

        DensityMatrix obs = dense_observable(h);
        // The global channel sits after every gate, so it is pulled first.
        if (noise.global_applications > 0 && noise.global_p < 1.0) {
            const double survive =
                std::pow(noise.global_p, static_cast<double>(noise.global_applications));
            const double off = (1.0 - survive) * obs.trace_real() / static_cast<double>(obs.dim());
            obs.rescale(survive);
            const std::size_t d = obs.dim();
            for (std::size_t i = 0; i < d; ++i) obs.at(i, i) += off;
        }
        for (std::size_t i = ops.size(); i-- > 0;) {
            pull_observable(obs, ops[i], snapshot_angle(ops[i]));
        }

        DensityMatrix rho = DensityMatrix::zero_state(circuit.num_qubits);
        std::size_t next_op = 0;

        for (const std::size_t pos : param_pos) {
            // Advance the frame: rho through [next_op, pos), obs through
            // [next_op, pos].
            for (std::size_t k = next_op; k < pos; ++k) {
                apply_op_to_state(rho, ops[k],
                                  ops[k].param_index >= 0
                                      ? params[static_cast<std::size_t>(ops[k].param_index)]
                                      : ops[k].fixed_angle);
                push_observable(obs, ops[k], snapshot_angle(ops[k]));
            }
            push_observable(obs, ops[pos], snapshot_angle(ops[pos]));

            const SimOp& gate = ops[pos];
            const int j = gate.param_index;
            const RotationTraces traces =
                rotation_traces(obs, rho, gate.q0, rotation_generator(gate.gate));
            if (!have_current) {
                current = traces.energy_at(params[static_cast<std::size_t>(j)]);
                have_current = true;
            }
            auto evaluate = [&](double theta) { return traces.energy_at(theta); };
            const NftStep step = nft_update(evaluate, params[static_cast<std::size_t>(j)], current);
            params[static_cast<std::size_t>(j)] = step.theta;
            current = step.energy;
            trace.push_back(current);

            apply_1q(rho, gate.q0, gate_matrix(gate.gate, step.theta));
            next_op = pos + 1;
        }
    }
}

}  // namespace

std::vector<double> vqe_initial_params(int count, std::uint64_t seed) {
    Rng rng = make_rng(derive_seed(seed, {0x1717u}));
    std::vector<double> params(static_cast<std::size_t>(count));
    for (auto& p : params) p = 2.0 * kPi * uniform_double(rng);
    return params;
}

void VqeConfig::validate() const {
    if (layers < 1) throw std::invalid_argument("VqeConfig: layers must be >= 1");
    if (sweeps < 1) throw std::invalid_argument("VqeConfig: sweeps must be >= 1");
    if (!exact && shots_per_term < 1) {
        throw std::invalid_argument("VqeConfig: shots_per_term must be >= 1");
    }
}

NftStep nft_update(const std::function<double(double)>& evaluate, double theta0, double e0) {
    const double e_plus = evaluate(theta0 + kPi / 2.0);
    const double e_minus = evaluate(theta0 - kPi / 2.0);

    // E(theta) = c + a cos(theta - b) through the three samples.
    const double c = 0.5 * (e_plus + e_minus);
    const double cos_part = e0 - c;                  // a cos(theta0 - b)
    const double sin_part = 0.5 * (e_minus - e_plus);  // a sin(theta0 - b)
    const double a = std::hypot(cos_part, sin_part);

    const double scale = std::abs(c) + std::abs(e0) + 1.0;
    if (a <= 1e-12 * scale) {
        return {theta0, e0};  // flat direction, keep the angle
    }
    const double b = theta0 - std::atan2(sin_part, cos_part);
    return {wrap_angle(b), c + a};
}

VqeResult run_vqe(const Hamiltonian& h, const VqeConfig& cfg, const NoiseParams& noise) {
    cfg.validate();
    noise.validate();
    if (h.num_qubits < 1) {
        throw std::invalid_argument("run_vqe: Hamiltonian has no qubits");
    }
    const bool noisy = noise.any_noise();
    if (noisy && h.num_qubits > kDensityQubitCap) {
        throw std::invalid_argument("run_vqe: " + std::to_string(h.num_qubits) +
                                    " qubits exceeds density backend cap " +
                                    std::to_string(kDensityQubitCap));
    }
    if (!noisy && h.num_qubits > kPureQubitCap) {
        throw std::invalid_argument("run_vqe: " + std::to_string(h.num_qubits) +
                                    " qubits exceeds pure backend cap " +
                                    std::to_string(kPureQubitCap));
    }

    const Circuit circuit = build_hea(h.num_qubits, cfg.layers);
    VqeResult result;
    result.final_params = vqe_initial_params(circuit.num_params, cfg.seed);

    if (cfg.exact && !noisy) {
        optimize_pure(circuit, h, cfg, result.final_params, result.energy_trace);
    } else if (cfg.exact) {
        optimize_density_frame(circuit, h, cfg, noise, result.final_params, result.energy_trace);
    } else {
        optimize_sampled(circuit, h, cfg, noise, result.final_params, result.energy_trace,
                         result.shots_used);
    }

    // Candidate state at the final parameters under the same noise model.
    if (noisy) {
        result.candidate_state = run_density(circuit, result.final_params, noise);
    } else {
        result.candidate_state = run_pure(circuit, result.final_params);
    }

    if (cfg.exact) {
        result.energy = expectation_exact(result.candidate_state, h);
    } else {
        double e = 0.0;
        long term_index = 0;
        const std::uint64_t final_seed = derive_seed(cfg.seed, {0xF1A7u});
        for (const auto& [coeff, pauli] : h.terms) {
            const auto sample =
                sample_pauli(result.candidate_state, pauli, cfg.shots_per_term,
                             derive_seed(final_seed, {static_cast<std::uint64_t>(term_index++)}));
            e += coeff * sample.estimate;
            result.shots_used += sample.shots;
        }
        result.energy = e;
    }

    try {
        result.energy_ratio = energy_ratio(result, h);
    } catch (const std::exception&) {
        result.energy_ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

double energy_ratio(const VqeResult& result, const Hamiltonian& h) {
    const double top = max_eigenvalue(h);
    if (std::abs(top) < 1e-12) {
        throw std::invalid_argument("energy_ratio: maximum eigenvalue is zero");
    }
    return result.energy / top;
}

void to_json(nlohmann::json& j, const VqeResult& r) {
    j = nlohmann::json{{"params", r.final_params},
                       {"energy", r.energy},
                       {"energy_trace", r.energy_trace},
                       {"energy_ratio", r.energy_ratio},
                       {"shots_used", r.shots_used}};
}

}  // namespace qrao
