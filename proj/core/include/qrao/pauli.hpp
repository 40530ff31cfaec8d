#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrao {

enum class PauliAxis : std::uint8_t { X = 0, Y = 1, Z = 2 };

char axis_to_char(PauliAxis a);
PauliAxis axis_from_char(char c);

// Tensor product of single-qubit Paulis; qubits absent from `factors`
// carry the identity. An empty factor map is the identity string.
struct PauliString {
    std::map<int, PauliAxis> factors;
    int num_qubits = 0;

    bool is_identity() const { return factors.empty(); }
    int weight() const { return static_cast<int>(factors.size()); }

    // "XIZ"-style label, qubit 0 leftmost.
    std::string label() const;

    static PauliString identity(int num_qubits);
    static PauliString single(int num_qubits, int qubit, PauliAxis axis);
    static PauliString two(int num_qubits, int q0, PauliAxis a0, int q1, PauliAxis a1);

    void validate() const;

    auto operator<=>(const PauliString&) const = default;
};

// Action on a computational basis state: P|b> = phase(b) |b ^ flip_mask>.
// Encapsulates the bit-twiddling used by every expectation kernel.
struct PauliAction {
    std::uint64_t flip_mask = 0;   // qubits carrying X or Y
    std::uint64_t sign_mask = 0;   // qubits carrying Y or Z
    std::complex<double> prefactor = 1.0;  // i^(#Y)

    explicit PauliAction(const PauliString& p);

    std::complex<double> phase(std::uint64_t basis) const {
        const int par = __builtin_popcountll(basis & sign_mask) & 1;
        return par ? -prefactor : prefactor;
    }
};

// Real-weighted sum of Pauli strings plus identity offset; Hermitian by
// construction. Terms are kept in canonical (qubit, axis) order so that
// serialized Hamiltonians are byte-stable.
struct Hamiltonian {
    std::vector<std::pair<double, PauliString>> terms;
    int num_qubits = 0;

    void add_term(double coeff, PauliString p);
    void canonicalize();

    double identity_coefficient() const;
    std::size_t num_terms() const { return terms.size(); }

    // True when every factor is Z (the operator is diagonal in the
    // computational basis).
    bool is_diagonal() const;
};

void to_json(nlohmann::json& j, const PauliString& p);
void from_json(const nlohmann::json& j, PauliString& p);
void to_json(nlohmann::json& j, const Hamiltonian& h);
void from_json(const nlohmann::json& j, Hamiltonian& h);

}  // namespace qrao
