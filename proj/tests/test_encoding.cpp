#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qrao/encoding.hpp"
#include "qrao/graph.hpp"
#include "qrao/rng.hpp"
#include "qrao/simulate.hpp"

using namespace qrao;

namespace {

Graph triangle() { return Graph::make(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path4() { return Graph::make(4, {{0, 1}, {1, 2}, {2, 3}}); }

Graph k33() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 3; ++i) {
        for (int j = 3; j < 6; ++j) edges.push_back({i, j});
    }
    return Graph::make(6, std::move(edges));
}

BitAssignment random_bits(int n, Rng& rng) {
    BitAssignment m(n);
    for (auto& b : m) b = static_cast<std::uint8_t>(uniform_below(rng, 2));
    return m;
}

constexpr double kInvSqrt3 = 0.57735026918962576451;

}  // namespace

TEST_SUITE("encoding") {

TEST_CASE("ising hamiltonian structure on the triangle") {
    const Hamiltonian h = build_ising_hamiltonian(triangle());
    CHECK(h.num_qubits == 3);
    CHECK(h.identity_coefficient() == doctest::Approx(1.5));
    int zz_terms = 0;
    for (const auto& [coeff, p] : h.terms) {
        if (p.weight() == 2) {
            CHECK(coeff == doctest::Approx(-0.5));
            ++zz_terms;
        }
    }
    CHECK(zz_terms == 3);

    // oracle eigensolve of the 8x8 matrix equals the brute-force max cut
    CHECK(oracle::max_eigenvalue(oracle::hamiltonian_matrix(h)) == doctest::Approx(2.0));
    CHECK(max_eigenvalue(h) == doctest::Approx(2.0));
}

TEST_CASE("ising single edge attains eigenvalue 1 on |01>") {
    const Hamiltonian h = build_ising_hamiltonian(Graph::make(2, {{0, 1}}));
    StateVector psi = StateVector::zero(2);
    // |01>: qubit 0 in 0, qubit 1 in 1
    psi.amps[0] = 0.0;
    psi.amps[2] = 1.0;
    CHECK(expectation_exact(psi, h) == doctest::Approx(1.0));
}

TEST_CASE("empty edge set gives the zero Hamiltonian") {
    const Graph isolated = Graph::make(3, {});
    CHECK(build_ising_hamiltonian(isolated).terms.empty());
    const QracAssignment a = assign_qrac(isolated);
    CHECK(build_qrac_hamiltonian(isolated, a).terms.empty());
    CHECK(max_eigenvalue(build_ising_hamiltonian(isolated)) == doctest::Approx(0.0));
}

TEST_CASE("qrac assignment on known graphs") {
    const QracAssignment path_a = assign_qrac(path4());
    CHECK(path_a.num_qubits == 2);
    path_a.validate(path4());

    const QracAssignment tri_a = assign_qrac(triangle());
    CHECK(tri_a.num_qubits == 3);

    const QracAssignment k33_a = assign_qrac(k33());
    CHECK(k33_a.num_qubits == 2);
    k33_a.validate(k33());
}

TEST_CASE("qrac assignment invariants over random graphs") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 6 + static_cast<int>(seed % 7) * 2;  // 6..18
        const Graph g = generate_random_regular(n, 3, seed);
        const QracAssignment a = assign_qrac(g);
        CHECK_NOTHROW(a.validate(g));
        CHECK(a.num_qubits >= (g.num_nodes + 2) / 3);  // information floor
        // deterministic
        CHECK(assign_qrac(g).num_qubits == a.num_qubits);
    }
}

TEST_CASE("qrac hamiltonian of a single edge") {
    const Graph g = Graph::make(2, {{0, 1}});
    QracAssignment a;
    a.num_qubits = 2;
    a.node_to_slot = {{0, PauliAxis::X}, {1, PauliAxis::X}};
    const Hamiltonian h = build_qrac_hamiltonian(g, a);
    REQUIRE(h.terms.size() == 2);
    CHECK(h.identity_coefficient() == doctest::Approx(0.5));
    CHECK(h.terms[1].first == doctest::Approx(-1.5));
    CHECK(h.terms[1].second.label() == "XX");

    // relaxation: max eigenvalue 2 exceeds the max cut 1
    CHECK(max_eigenvalue(h) == doctest::Approx(2.0));
    CHECK(oracle::max_eigenvalue(oracle::hamiltonian_matrix(h)) == doctest::Approx(2.0));
}

TEST_CASE("qrac hamiltonian of the path graph has three weight-2 terms at -1.5") {
    const Graph g = path4();
    const QracAssignment a = assign_qrac(g);
    const Hamiltonian h = build_qrac_hamiltonian(g, a);
    int heavy = 0;
    for (const auto& [coeff, p] : h.terms) {
        if (p.weight() == 2) {
            CHECK(coeff == doctest::Approx(-1.5));
            ++heavy;
        }
    }
    CHECK(heavy == 3);
    CHECK(h.identity_coefficient() == doctest::Approx(1.5));
}

TEST_CASE("qrac product state Bloch vectors") {
    // three isolated nodes pack onto one fully used qubit
    const Graph isolated = Graph::make(3, {});
    const QracAssignment a = assign_qrac(isolated);
    REQUIRE(a.num_qubits == 1);

    const DensityMatrix plus = qrac_product_state({0, 0, 0}, a);
    for (const auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        CHECK(expectation(plus, PauliString::single(1, 0, axis)) == doctest::Approx(kInvSqrt3));
    }
    CHECK(plus.trace_real() == doctest::Approx(1.0));

    const DensityMatrix minus = qrac_product_state({1, 1, 1}, a);
    for (const auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        CHECK(expectation(minus, PauliString::single(1, 0, axis)) == doctest::Approx(-kInvSqrt3));
    }
}

TEST_CASE("relaxation identity on the path graph, library and oracle routes") {
    const Graph g = path4();
    const QracAssignment a = assign_qrac(g);
    const Hamiltonian h = build_qrac_hamiltonian(g, a);
    const BitAssignment m{0, 1, 0, 1};

    const DensityMatrix f = qrac_product_state(m, a);
    CHECK(expectation_exact(f, h) == doctest::Approx(3.0).epsilon(1e-9));

    const oracle::Cd trace = (oracle::hamiltonian_matrix(h) * oracle::density_matrix(f)).trace();
    CHECK(trace.real() == doctest::Approx(static_cast<double>(cut_value(g, m))).epsilon(1e-9));
    CHECK(trace.imag() == doctest::Approx(0.0));
}

TEST_CASE("relaxation identity over random graphs and assignments") {
    Rng rng = make_rng(7);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 6 + static_cast<int>(seed % 4) * 2;  // 6..12
        const Graph g = generate_random_regular(n, 3, seed);
        const QracAssignment a = assign_qrac(g);
        const Hamiltonian h = build_qrac_hamiltonian(g, a);
        const BitAssignment m = random_bits(n, rng);
        const DensityMatrix f = qrac_product_state(m, a);
        const double lhs = expectation_exact(f, h);
        CHECK(lhs == doctest::Approx(static_cast<double>(cut_value(g, m))).epsilon(1e-9));
    }
}

TEST_CASE("ising max eigenvalue equals brute force exactly; qrac dominates it") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const Graph g = generate_random_regular(10, 3, seed);
        const long opt = max_cut_bruteforce(g).value;
        const double ising_top = max_eigenvalue(build_ising_hamiltonian(g));
        CHECK(ising_top == doctest::Approx(static_cast<double>(opt)).epsilon(1e-12));

        const QracAssignment a = assign_qrac(g);
        const double qrac_top = max_eigenvalue(build_qrac_hamiltonian(g, a));
        CHECK(qrac_top >= static_cast<double>(opt) - 1e-9);
    }
}

TEST_CASE("dense eigensolve path agrees with the oracle on non-diagonal operators") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = generate_random_regular(8, 3, seed);
        const QracAssignment a = assign_qrac(g);
        const Hamiltonian h = build_qrac_hamiltonian(g, a);
        CHECK(max_eigenvalue(h) ==
              doctest::Approx(oracle::max_eigenvalue(oracle::hamiltonian_matrix(h)))
                  .epsilon(1e-9));
    }
}

TEST_CASE("max_eigenvalue enforces the dense cap for non-diagonal operators") {
    PauliString big = PauliString::single(15, 0, PauliAxis::X);
    Hamiltonian h;
    h.num_qubits = 15;
    h.add_term(1.0, big);
    CHECK_THROWS_AS(max_eigenvalue(h), std::invalid_argument);
    // diagonal operators skip the dense solve entirely
    Hamiltonian diag;
    diag.num_qubits = 15;
    diag.add_term(2.0, PauliString::single(15, 3, PauliAxis::Z));
    CHECK(max_eigenvalue(diag) == doctest::Approx(2.0));
}

TEST_CASE("hamiltonian serialization is canonical and round-trips") {
    const Graph g = generate_random_regular(8, 3, 3);
    const QracAssignment a = assign_qrac(g);
    const Hamiltonian h = build_qrac_hamiltonian(g, a);

    const nlohmann::json j = h;
    const auto back = j.get<Hamiltonian>();
    CHECK(back.num_qubits == h.num_qubits);
    REQUIRE(back.terms.size() == h.terms.size());
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        CHECK(back.terms[i].first == doctest::Approx(h.terms[i].first));
        CHECK(back.terms[i].second == h.terms[i].second);
    }
    CHECK(nlohmann::json(back).dump() == j.dump());  // byte-stable

    const nlohmann::json ja = a;
    const auto a_back = ja.get<QracAssignment>();
    CHECK(a_back.num_qubits == a.num_qubits);
    CHECK_NOTHROW(a_back.validate(g));
    for (int v = 0; v < a.num_nodes(); ++v) {
        CHECK(a_back.node_to_slot[v].qubit == a.node_to_slot[v].qubit);
        CHECK(a_back.node_to_slot[v].axis == a.node_to_slot[v].axis);
    }
}

TEST_CASE("assignment validation rejects broken invariants") {
    const Graph g = Graph::make(2, {{0, 1}});
    QracAssignment shared;
    shared.num_qubits = 1;
    shared.node_to_slot = {{0, PauliAxis::X}, {0, PauliAxis::Y}};
    CHECK_THROWS_AS(shared.validate(g), std::invalid_argument);  // adjacent on one qubit

    QracAssignment reused;
    reused.num_qubits = 2;
    reused.node_to_slot = {{0, PauliAxis::X}, {0, PauliAxis::X}};
    CHECK_THROWS_AS(reused.validate(g), std::invalid_argument);  // slot reused

    QracAssignment mismatch;
    mismatch.num_qubits = 2;
    mismatch.node_to_slot = {{0, PauliAxis::X}};
    CHECK_THROWS_AS(build_qrac_hamiltonian(g, mismatch), std::invalid_argument);
}

}  // TEST_SUITE
