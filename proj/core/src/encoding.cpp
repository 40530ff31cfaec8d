#include "qrao/encoding.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qrao {

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576451;

}  // namespace

PauliString QracAssignment::node_pauli(int node) const {
    if (node < 0 || node >= num_nodes()) {
        throw std::invalid_argument("QracAssignment: node out of range");
    }
    const Slot& s = node_to_slot[node];
    return PauliString::single(num_qubits, s.qubit, s.axis);
}

void QracAssignment::validate(const Graph& g) const {
    if (g.num_nodes != num_nodes()) {
        throw std::invalid_argument("QracAssignment: node count mismatch with graph");
    }
    std::vector<std::array<int, 3>> slot_user(num_qubits, {-1, -1, -1});
    for (int v = 0; v < num_nodes(); ++v) {
        const Slot& s = node_to_slot[v];
        if (s.qubit < 0 || s.qubit >= num_qubits) {
            throw std::invalid_argument("QracAssignment: qubit out of range for node " +
                                        std::to_string(v));
        }
        int& user = slot_user[s.qubit][static_cast<int>(s.axis)];
        if (user >= 0) {
            throw std::invalid_argument("QracAssignment: slot reused by nodes " +
                                        std::to_string(user) + " and " + std::to_string(v));
        }
        user = v;
    }
    for (const auto& [i, j] : g.edges) {
        if (node_to_slot[i].qubit == node_to_slot[j].qubit) {
            throw std::invalid_argument("QracAssignment: adjacent nodes " + std::to_string(i) +
                                        ", " + std::to_string(j) + " share a qubit");
        }
    }
}

Hamiltonian build_ising_hamiltonian(const Graph& g) {
    Hamiltonian h;
    h.num_qubits = g.num_nodes;
    if (!g.edges.empty()) {
        h.add_term(0.5 * g.num_edges(), PauliString::identity(h.num_qubits));
        for (const auto& [i, j] : g.edges) {
            h.add_term(-0.5, PauliString::two(h.num_qubits, i, PauliAxis::Z, j, PauliAxis::Z));
        }
    }
    h.canonicalize();
    return h;
}

QracAssignment assign_qrac(const Graph& g) {
    const int n = g.num_nodes;
    std::vector<std::vector<int>> adjacency(n);
    std::vector<int> degree(n, 0);
    for (const auto& [i, j] : g.edges) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
        ++degree[i];
        ++degree[j];
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return degree[a] > degree[b]; });

    QracAssignment a;
    a.node_to_slot.assign(n, {});
    std::vector<int> occupancy;            // nodes placed per qubit
    std::vector<std::vector<int>> members; // which nodes sit on each qubit

    for (const int v : order) {
        int chosen = -1;
        for (int q = 0; q < static_cast<int>(occupancy.size()); ++q) {
            if (occupancy[q] >= 3) continue;
            bool clash = false;
            for (const int u : members[q]) {
                if (std::find(adjacency[v].begin(), adjacency[v].end(), u) !=
                    adjacency[v].end()) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                chosen = q;
                break;
            }
        }
        if (chosen < 0) {
            chosen = static_cast<int>(occupancy.size());
            occupancy.push_back(0);
            members.emplace_back();
        }
        a.node_to_slot[v] = {chosen, static_cast<PauliAxis>(occupancy[chosen])};
        ++occupancy[chosen];
        members[chosen].push_back(v);
    }
    a.num_qubits = static_cast<int>(occupancy.size());
    a.validate(g);
    return a;
}

Hamiltonian build_qrac_hamiltonian(const Graph& g, const QracAssignment& a) {
    a.validate(g);
    Hamiltonian h;
    h.num_qubits = a.num_qubits;
    if (!g.edges.empty()) {
        h.add_term(0.5 * g.num_edges(), PauliString::identity(h.num_qubits));
        for (const auto& [i, j] : g.edges) {
            const auto& si = a.node_to_slot[i];
            const auto& sj = a.node_to_slot[j];
            h.add_term(-1.5, PauliString::two(h.num_qubits, si.qubit, si.axis, sj.qubit, sj.axis));
        }
    }
    h.canonicalize();
    return h;
}

DensityMatrix qrac_product_state(const BitAssignment& m, const QracAssignment& a) {
    if (static_cast<int>(m.size()) != a.num_nodes()) {
        throw std::invalid_argument("qrac_product_state: bit length != node count");
    }
    // Per-qubit sign triple; unassigned axes read bit 0 (sign +1).
    std::vector<std::array<double, 3>> signs(a.num_qubits, {1.0, 1.0, 1.0});
    for (int v = 0; v < a.num_nodes(); ++v) {
        const auto& s = a.node_to_slot[v];
        signs[s.qubit][static_cast<int>(s.axis)] = m[v] ? -1.0 : 1.0;
    }

    DensityMatrix rho = DensityMatrix::zero_state(a.num_qubits);
    const std::size_t d = rho.dim();
    // rho = tensor product of f_q = (1/2)(I + (sx X + sy Y + sz Z)/sqrt(3));
    // built entrywise: f entries indexed by one bit per qubit.
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            complex_t val{1.0, 0.0};
            for (int q = 0; q < a.num_qubits; ++q) {
                const int rb = (r >> q) & 1;
                const int cb = (c >> q) & 1;
                const double sx = signs[q][0] * kInvSqrt3;
                const double sy = signs[q][1] * kInvSqrt3;
                const double sz = signs[q][2] * kInvSqrt3;
                complex_t f;
                if (rb == 0 && cb == 0) {
                    f = complex_t{0.5 * (1.0 + sz), 0.0};
                } else if (rb == 0 && cb == 1) {
                    f = 0.5 * complex_t{sx, -sy};
                } else if (rb == 1 && cb == 0) {
                    f = 0.5 * complex_t{sx, sy};
                } else {
                    f = complex_t{0.5 * (1.0 - sz), 0.0};
                }
                val *= f;
            }
            rho.at(r, c) = val;
        }
    }
    return rho;
}

std::vector<std::vector<complex_t>> to_dense_matrix(const Hamiltonian& h, int dense_qubit_cap) {
    if (h.num_qubits > dense_qubit_cap) {
        throw std::invalid_argument("to_dense_matrix: " + std::to_string(h.num_qubits) +
                                    " qubits exceeds dense cap " + std::to_string(dense_qubit_cap));
    }
    const std::size_t d = std::size_t{1} << h.num_qubits;
    std::vector<std::vector<complex_t>> m(d, std::vector<complex_t>(d, complex_t{0.0, 0.0}));
    for (const auto& [coeff, p] : h.terms) {
        const PauliAction act(p);
        // P[k ^ flip, k] = phase(k)
        for (std::size_t k = 0; k < d; ++k) {
            m[k ^ act.flip_mask][k] += coeff * act.phase(k);
        }
    }
    return m;
}

double max_eigenvalue(const Hamiltonian& h, int dense_qubit_cap) {
    if (h.num_qubits < 1) {
        throw std::invalid_argument("max_eigenvalue: empty Hamiltonian");
    }
    if (h.is_diagonal()) {
        // Diagonal operators: the spectrum is the diagonal itself, so the
        // brute scan over basis states is exact and avoids the O(8^n) solve.
        const std::size_t d = std::size_t{1} << h.num_qubits;
        double best = std::numeric_limits<double>::lowest();
        for (std::size_t k = 0; k < d; ++k) {
            double diag = 0.0;
            for (const auto& [coeff, p] : h.terms) {
                const PauliAction act(p);
                diag += coeff * act.phase(k).real();
            }
            best = std::max(best, diag);
        }
        return best;
    }

    if (h.num_qubits > dense_qubit_cap) {
        throw std::invalid_argument("max_eigenvalue: " + std::to_string(h.num_qubits) +
                                    " qubits exceeds dense cap " + std::to_string(dense_qubit_cap));
    }
    const auto dense = to_dense_matrix(h, dense_qubit_cap);
    const auto d = static_cast<Eigen::Index>(dense.size());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

void to_json(nlohmann::json& j, const QracAssignment& a) {
    nlohmann::json nodes = nlohmann::json::object();
    for (int v = 0; v < a.num_nodes(); ++v) {
        const auto& s = a.node_to_slot[v];
        nodes[std::to_string(v)] = {s.qubit, std::string(1, axis_to_char(s.axis))};
    }
    j = nlohmann::json{{"num_qubits", a.num_qubits}, {"nodes", nodes}};
}

void from_json(const nlohmann::json& j, QracAssignment& a) {
    a.num_qubits = j.at("num_qubits").get<int>();
    const auto& nodes = j.at("nodes");
    a.node_to_slot.assign(nodes.size(), {});
    for (const auto& [key, val] : nodes.items()) {
        const int v = std::stoi(key);
        if (v < 0 || v >= static_cast<int>(a.node_to_slot.size())) {
            throw std::invalid_argument("QracAssignment json: node index out of range");
        }
        const std::string axis = val.at(1).get<std::string>();
        if (axis.size() != 1) {
            throw std::invalid_argument("QracAssignment json: axis must be one character");
        }
        a.node_to_slot[v] = {val.at(0).get<int>(), axis_from_char(axis[0])};
    }
}

}  // namespace qrao
