#include "qrao/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrao {

char axis_to_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    throw std::logic_error("invalid PauliAxis");
}

PauliAxis axis_from_char(char c) {
    switch (c) {
        case 'X': case 'x': return PauliAxis::X;
        case 'Y': case 'y': return PauliAxis::Y;
        case 'Z': case 'z': return PauliAxis::Z;
    }
    throw std::invalid_argument(std::string("invalid Pauli axis '") + c + "'");
}

std::string PauliString::label() const {
    std::string s(static_cast<std::size_t>(num_qubits), 'I');
    for (const auto& [q, a] : factors) s[static_cast<std::size_t>(q)] = axis_to_char(a);
    return s;
}

PauliString PauliString::identity(int num_qubits) {
    PauliString p;
    p.num_qubits = num_qubits;
    return p;
}

PauliString PauliString::single(int num_qubits, int qubit, PauliAxis axis) {
    PauliString p;
    p.num_qubits = num_qubits;
    p.factors[qubit] = axis;
    p.validate();
    return p;
}

PauliString PauliString::two(int num_qubits, int q0, PauliAxis a0, int q1, PauliAxis a1) {
    if (q0 == q1) {
        throw std::invalid_argument("PauliString::two: qubits must differ");
    }
    PauliString p;
    p.num_qubits = num_qubits;
    p.factors[q0] = a0;
    p.factors[q1] = a1;
    p.validate();
    return p;
}

void PauliString::validate() const {
    for (const auto& [q, a] : factors) {
        (void)a;
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("PauliString: qubit index " + std::to_string(q) +
                                        " out of range for " + std::to_string(num_qubits) +
                                        " qubits");
        }
    }
}

PauliAction::PauliAction(const PauliString& p) {
    int num_y = 0;
    for (const auto& [q, a] : p.factors) {
        const std::uint64_t bit = 1ULL << q;
        if (a == PauliAxis::X || a == PauliAxis::Y) flip_mask |= bit;
        if (a == PauliAxis::Y || a == PauliAxis::Z) sign_mask |= bit;
        if (a == PauliAxis::Y) ++num_y;
    }
    static const std::complex<double> powers_of_i[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    prefactor = powers_of_i[num_y & 3];
}

void Hamiltonian::add_term(double coeff, PauliString p) {
    if (!std::isfinite(coeff)) {
        throw std::invalid_argument("Hamiltonian: non-finite coefficient");
    }
    if (p.num_qubits != num_qubits) {
        throw std::invalid_argument("Hamiltonian: term qubit count mismatch");
    }
    p.validate();
    terms.emplace_back(coeff, std::move(p));
}

void Hamiltonian::canonicalize() {
    std::sort(terms.begin(), terms.end(), [](const auto& lhs, const auto& rhs) {
        return lhs.second < rhs.second;
    });
    // merge equal strings
    std::vector<std::pair<double, PauliString>> merged;
    for (auto& [c, p] : terms) {
        if (!merged.empty() && merged.back().second == p) {
            merged.back().first += c;
        } else {
            merged.emplace_back(c, std::move(p));
        }
    }
    terms = std::move(merged);
}

double Hamiltonian::identity_coefficient() const {
    double c = 0.0;
    for (const auto& [coeff, p] : terms) {
        if (p.is_identity()) c += coeff;
    }
    return c;
}

bool Hamiltonian::is_diagonal() const {
    for (const auto& [coeff, p] : terms) {
        (void)coeff;
        for (const auto& [q, a] : p.factors) {
            (void)q;
            if (a != PauliAxis::Z) return false;
        }
    }
    return true;
}

void to_json(nlohmann::json& j, const PauliString& p) {
    nlohmann::json factors = nlohmann::json::object();
    for (const auto& [q, a] : p.factors) {
        factors[std::to_string(q)] = std::string(1, axis_to_char(a));
    }
    j = nlohmann::json{{"num_qubits", p.num_qubits}, {"paulis", factors}};
}

void from_json(const nlohmann::json& j, PauliString& p) {
    p.factors.clear();
    p.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& [key, val] : j.at("paulis").items()) {
        const std::string axis = val.get<std::string>();
        if (axis.size() != 1) {
            throw std::invalid_argument("PauliString json: axis must be one character");
        }
        p.factors[std::stoi(key)] = axis_from_char(axis[0]);
    }
    p.validate();
}

void to_json(nlohmann::json& j, const Hamiltonian& h) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [coeff, p] : h.terms) {
        nlohmann::json factors = nlohmann::json::object();
        for (const auto& [q, a] : p.factors) {
            factors[std::to_string(q)] = std::string(1, axis_to_char(a));
        }
        terms.push_back({{"coeff", coeff}, {"paulis", factors}});
    }
    j = nlohmann::json{{"num_qubits", h.num_qubits}, {"terms", terms}};
}

void from_json(const nlohmann::json& j, Hamiltonian& h) {
    h.terms.clear();
    h.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& term : j.at("terms")) {
        PauliString p;
        p.num_qubits = h.num_qubits;
        for (const auto& [key, val] : term.at("paulis").items()) {
            const std::string axis = val.get<std::string>();
            if (axis.size() != 1) {
                throw std::invalid_argument("Hamiltonian json: axis must be one character");
            }
            p.factors[std::stoi(key)] = axis_from_char(axis[0]);
        }
        h.add_term(term.at("coeff").get<double>(), std::move(p));
    }
}

}  // namespace qrao
