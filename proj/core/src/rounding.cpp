#include "qrao/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qrao/rng.hpp"

namespace qrao {

namespace {

constexpr double kZeroTraceTol = 1e-12;

// Fills cut and ratio; ratio is NaN when the graph exceeds the
// brute-force cap.
void score_outcome(RoundingOutcome& out, const Graph& g) {
    out.cut = cut_value(g, out.bits);
    if (g.num_nodes <= 24) {
        const long opt = max_cut_bruteforce(g).value;
        out.ratio = opt > 0 ? approximation_ratio(out.cut, opt)
                            : std::numeric_limits<double>::quiet_NaN();
    } else {
        out.ratio = std::numeric_limits<double>::quiet_NaN();
    }
}

std::uint8_t sign_to_bit(double trace, Rng& tiebreak) {
    if (std::abs(trace) <= kZeroTraceTol) {
        return static_cast<std::uint8_t>(uniform_below(tiebreak, 2));
    }
    return trace > 0.0 ? 0 : 1;
}

Mat2 bloch_projector(const std::array<double, 3>& v) {
    // (1/2)(I + v . sigma)
    return {complex_t{0.5 * (1.0 + v[2]), 0.0}, complex_t{0.5 * v[0], -0.5 * v[1]},
            complex_t{0.5 * v[0], 0.5 * v[1]}, complex_t{0.5 * (1.0 - v[2]), 0.0}};
}

double bloch_component(const QuantumState& state, int qubit, PauliAxis axis) {
    return expectation(state, PauliString::single(state_num_qubits(state), qubit, axis));
}

// Projective single-qubit measurement along +-v with collapse; returns
// true for the + outcome.
bool measure_qubit_along(QuantumState& state, int qubit, const std::array<double, 3>& v,
                         Rng& rng) {
    const double px = bloch_component(state, qubit, PauliAxis::X);
    const double py = bloch_component(state, qubit, PauliAxis::Y);
    const double pz = bloch_component(state, qubit, PauliAxis::Z);
    double p_plus = 0.5 * (1.0 + v[0] * px + v[1] * py + v[2] * pz);
    p_plus = std::clamp(p_plus, 0.0, 1.0);

    const bool plus = uniform_double(rng) < p_plus;
    const Mat2 proj = bloch_projector(plus ? v : std::array<double, 3>{-v[0], -v[1], -v[2]});
    if (std::holds_alternative<StateVector>(state)) {
        auto& psi = std::get<StateVector>(state);
        apply_1q(psi, qubit, proj);
        psi.normalize();
    } else {
        auto& rho = std::get<DensityMatrix>(state);
        apply_1q(rho, qubit, proj);
        const double tr = rho.trace_real();
        if (tr <= 0.0) {
            throw std::runtime_error("magic rounding: collapse onto zero-probability outcome");
        }
        rho.rescale(1.0 / tr);
    }
    return plus;
}

}  // namespace

const std::array<MagicBasis, 4>& magic_bases() {
    static const double s = 1.0 / std::sqrt(3.0);
    static const std::array<MagicBasis, 4> bases = {{
        {1, {s, s, s}, {0, 0, 0}},
        {2, {s, -s, -s}, {0, 1, 1}},
        {3, {-s, s, -s}, {1, 0, 1}},
        {4, {-s, -s, s}, {1, 1, 0}},
    }};
    return bases;
}

std::string rounding_method_name(RoundingMethod m) {
    switch (m) {
        case RoundingMethod::Pauli: return "pauli";
        case RoundingMethod::Magic: return "magic";
        case RoundingMethod::Computational: return "computational";
    }
    throw std::logic_error("invalid RoundingMethod");
}

ShotTable sample_node_paulis(const QuantumState& state, const QracAssignment& a, long shots,
                             std::uint64_t seed) {
    if (state_num_qubits(state) != a.num_qubits) {
        throw std::invalid_argument("sample_node_paulis: state/assignment qubit mismatch");
    }
    ShotTable table;
    table.shots = shots;
    table.columns.reserve(static_cast<std::size_t>(a.num_nodes()));
    for (int v = 0; v < a.num_nodes(); ++v) {
        const auto sample = sample_pauli(state, a.node_pauli(v), shots,
                                         derive_seed(seed, {0x5A0Bu, static_cast<std::uint64_t>(v)}));
        table.columns.push_back(sample.outcomes);
    }
    return table;
}

RoundingOutcome pauli_rounding(const QuantumState& state, const QracAssignment& a, const Graph& g,
                               const RoundingMode& mode) {
    if (state_num_qubits(state) != a.num_qubits) {
        throw std::invalid_argument("pauli_rounding: state/assignment qubit mismatch");
    }
    if (g.num_nodes != a.num_nodes()) {
        throw std::invalid_argument("pauli_rounding: graph/assignment node mismatch");
    }

    RoundingOutcome out;
    out.method = RoundingMethod::Pauli;
    out.bits.resize(static_cast<std::size_t>(a.num_nodes()));
    Rng tiebreak = make_rng(derive_seed(mode.seed, {0x7B17u}));

    if (mode.kind == RoundingMode::Kind::Exact) {
        for (int v = 0; v < a.num_nodes(); ++v) {
            const double trace = expectation(state, a.node_pauli(v));
            out.bits[static_cast<std::size_t>(v)] = sign_to_bit(trace, tiebreak);
        }
    } else {
        if (mode.shots < 1) {
            throw std::invalid_argument("pauli_rounding: shots must be >= 1");
        }
        const ShotTable table = sample_node_paulis(state, a, mode.shots, mode.seed);
        for (int v = 0; v < a.num_nodes(); ++v) {
            const double estimate =
                1.0 - 2.0 * static_cast<double>(table.ones(v)) / static_cast<double>(table.shots);
            out.bits[static_cast<std::size_t>(v)] = sign_to_bit(estimate, tiebreak);
        }
        out.shots_used = mode.shots * a.num_nodes();
    }
    score_outcome(out, g);
    return out;
}

RoundingOutcome magic_round_once(const QuantumState& state, const QracAssignment& a,
                                 const Graph& g, std::uint64_t seed) {
    if (state_num_qubits(state) != a.num_qubits) {
        throw std::invalid_argument("magic_round_once: state/assignment qubit mismatch");
    }
    if (g.num_nodes != a.num_nodes()) {
        throw std::invalid_argument("magic_round_once: graph/assignment node mismatch");
    }

    Rng rng = make_rng(derive_seed(seed, {0x3A61u}));
    QuantumState collapsed = state;

    // Per-qubit decoded (x1, x2, x3) triples.
    std::vector<std::array<std::uint8_t, 3>> triples(static_cast<std::size_t>(a.num_qubits));
    for (int q = 0; q < a.num_qubits; ++q) {
        const auto& basis = magic_bases()[uniform_below(rng, 4)];
        const bool plus = measure_qubit_along(collapsed, q, basis.plus_vector, rng);
        triples[static_cast<std::size_t>(q)] = plus ? basis.plus_bits : basis.minus_bits();
    }

    RoundingOutcome out;
    out.method = RoundingMethod::Magic;
    out.rounds_used = 1;
    out.bits.resize(static_cast<std::size_t>(a.num_nodes()));
    for (int v = 0; v < a.num_nodes(); ++v) {
        const auto& slot = a.node_to_slot[v];
        out.bits[static_cast<std::size_t>(v)] =
            triples[static_cast<std::size_t>(slot.qubit)][static_cast<int>(slot.axis)];
    }
    score_outcome(out, g);
    return out;
}

RoundingOutcome magic_rounding(const QuantumState& state, const QracAssignment& a, long rounds,
                               const Graph& g, std::uint64_t seed) {
    if (rounds < 1) {
        throw std::invalid_argument("magic_rounding: rounds must be >= 1");
    }
    RoundingOutcome best;
    bool have = false;
    for (long r = 0; r < rounds; ++r) {
        RoundingOutcome round =
            magic_round_once(state, a, g, derive_seed(seed, {static_cast<std::uint64_t>(r)}));
        if (!have || round.cut > best.cut) {
            best = std::move(round);
            have = true;
        }
    }
    best.rounds_used = rounds;
    return best;
}

RoundingOutcome computational_rounding(const QuantumState& state, const Graph& g, long shots,
                                       std::uint64_t seed) {
    if (state_num_qubits(state) != g.num_nodes) {
        throw std::invalid_argument("computational_rounding: state must live on |V| qubits");
    }
    if (shots < 1) {
        throw std::invalid_argument("computational_rounding: shots must be >= 1");
    }

    const std::vector<double> probs = basis_probabilities(state);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    const double total = cdf.back();
    if (total <= 0.0) {
        throw std::runtime_error("computational_rounding: vanishing probability mass");
    }

    Rng rng = make_rng(derive_seed(seed, {0xC0DEu}));
    RoundingOutcome best;
    best.method = RoundingMethod::Computational;
    best.shots_used = shots;
    long best_cut = -1;
    BitAssignment bits(static_cast<std::size_t>(g.num_nodes));
    for (long s = 0; s < shots; ++s) {
        const double u = uniform_double(rng) * total;
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        for (int v = 0; v < g.num_nodes; ++v) {
            bits[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>((idx >> v) & 1);
        }
        const long c = cut_value(g, bits);
        if (c > best_cut) {
            best_cut = c;
            best.bits = bits;
        }
    }
    score_outcome(best, g);
    return best;
}

double expected_magic_ratio_exact(const QuantumState& state, const QracAssignment& a,
                                  const Graph& g) {
    if (state_num_qubits(state) != a.num_qubits) {
        throw std::invalid_argument("expected_magic_ratio_exact: qubit mismatch");
    }
    const Hamiltonian h = build_qrac_hamiltonian(g, a);
    double energy = 0.0;
    for (const auto& [coeff, p] : h.terms) {
        const double shrink = std::pow(1.0 / 3.0, p.weight());
        energy += coeff * shrink * expectation(state, p);
    }
    const long opt = max_cut_bruteforce(g).value;
    if (opt <= 0) {
        throw std::invalid_argument("expected_magic_ratio_exact: graph has no positive cut");
    }
    return energy / static_cast<double>(opt);
}

void to_json(nlohmann::json& j, const RoundingOutcome& o) {
    std::string bits;
    bits.reserve(o.bits.size());
    for (const auto b : o.bits) bits.push_back(b ? '1' : '0');
    j = nlohmann::json{{"method", rounding_method_name(o.method)},
                       {"bits", bits},
                       {"cut", o.cut},
                       {"ratio", o.ratio},
                       {"rounds_used", o.rounds_used},
                       {"shots_used", o.shots_used}};
}

}  // namespace qrao
