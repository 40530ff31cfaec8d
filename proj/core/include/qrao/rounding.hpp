#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "qrao/encoding.hpp"
#include "qrao/graph.hpp"
#include "qrao/simulate.hpp"
#include "qrao/state.hpp"

namespace qrao {

// One of the four magic measurement bases. The +/- eigenstates are the
// eight QRAC cube vertices; outcome + decodes to `plus_bits` (one bit per
// axis X, Y, Z), outcome - to the complement.
struct MagicBasis {
    int index = 1;  // 1..4
    std::array<double, 3> plus_vector{};
    std::array<std::uint8_t, 3> plus_bits{};

    std::array<double, 3> minus_vector() const {
        return {-plus_vector[0], -plus_vector[1], -plus_vector[2]};
    }
    std::array<std::uint8_t, 3> minus_bits() const {
        return {static_cast<std::uint8_t>(1 - plus_bits[0]),
                static_cast<std::uint8_t>(1 - plus_bits[1]),
                static_cast<std::uint8_t>(1 - plus_bits[2])};
    }
};

const std::array<MagicBasis, 4>& magic_bases();

enum class RoundingMethod { Pauli, Magic, Computational };

std::string rounding_method_name(RoundingMethod m);

struct RoundingOutcome {
    BitAssignment bits;
    long cut = 0;
    double ratio = 0.0;  // NaN when the optimum is beyond the brute-force cap
    RoundingMethod method = RoundingMethod::Pauli;
    long rounds_used = 0;
    long shots_used = 0;
};

struct RoundingMode {
    enum class Kind { Exact, Shots };
    Kind kind = Kind::Exact;
    long shots = 1024;
    std::uint64_t seed = 0;

    static RoundingMode exact(std::uint64_t seed = 0) { return {Kind::Exact, 0, seed}; }
    static RoundingMode sampled(long shots, std::uint64_t seed) {
        return {Kind::Shots, shots, seed};
    }
};

// Shot table across all node Paulis: column j holds the 0/1 measurement
// results for node j's Pauli, the raw input of the sign estimator.
ShotTable sample_node_paulis(const QuantumState& state, const QracAssignment& a, long shots,
                             std::uint64_t seed);

// Decode each node's bit from the sign of Tr(P(v) rho): positive -> 0,
// negative -> 1, zero -> uniformly random. Exact mode computes traces
// exactly (the seed only feeds zero-trace tie-breaks); shots mode
// estimates them from sample_node_paulis.
RoundingOutcome pauli_rounding(const QuantumState& state, const QracAssignment& a, const Graph& g,
                               const RoundingMode& mode);

// One round of magic-state rounding: per qubit draw one of the four
// bases uniformly, measure the joint state qubit by qubit (ascending,
// with collapse), decode each node's bit from its (qubit, axis) slot.
RoundingOutcome magic_round_once(const QuantumState& state, const QracAssignment& a,
                                 const Graph& g, std::uint64_t seed);

// Best-of-R magic rounding by cut value; ties keep the earliest round.
// Round r consumes the child seed derive_seed(seed, {r}).
RoundingOutcome magic_rounding(const QuantumState& state, const QracAssignment& a, long rounds,
                               const Graph& g, std::uint64_t seed);

// Ising pipeline: sample the computational basis `shots` times and keep
// the sampled bitstring with the highest cut (ties keep the earliest).
RoundingOutcome computational_rounding(const QuantumState& state, const Graph& g, long shots,
                                       std::uint64_t seed);

// Analytic single-round expectation of the magic-rounding ratio: the
// averaged decode channel shrinks every Pauli expectation by 1/3 per
// supported qubit, so E[Tr(M(rho) H)] is a term-wise rescaled energy.
double expected_magic_ratio_exact(const QuantumState& state, const QracAssignment& a,
                                  const Graph& g);

void to_json(nlohmann::json& j, const RoundingOutcome& o);

}  // namespace qrao
