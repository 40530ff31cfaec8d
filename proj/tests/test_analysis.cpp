#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qrao/analysis.hpp"
#include "qrao/rng.hpp"

using namespace qrao;

TEST_SUITE("analysis") {

TEST_CASE("minimum shot count") {
    CHECK(min_shots(0.05, 0.1) == 150);  // ln(20)/0.02 = 149.79...
    CHECK(min_shots(1.0 / std::exp(1.0), 0.5) == 2);
    CHECK_THROWS_AS(min_shots(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(min_shots(1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(min_shots(0.1, 0.0), std::invalid_argument);

    // quadratic law: doubling epsilon divides the bound by 4 (up to ceiling)
    for (const double delta : {0.01, 0.05, 0.2}) {
        for (const double eps : {0.03, 0.1, 0.25}) {
            const double exact = std::log(1.0 / delta) / (2.0 * eps * eps);
            CHECK(std::abs(min_shots(delta, eps) - exact / 4.0 * 4.0) <= 1.0);
            CHECK(std::abs(min_shots(delta, 2.0 * eps) - exact / 4.0) <= 1.0);
        }
    }
}

TEST_CASE("shot plans") {
    const ShotPlan plan = make_shot_plan(0.05, 0.1);
    CHECK(plan.min_shots == 150);
    CHECK(plan.delta == doctest::Approx(0.05));

    const ShotPlan derived = shot_plan_for_success(0.9, 20, 0.1);
    CHECK(derived.delta == doctest::Approx(std::log(1.0 / 0.9) / 20.0));
    CHECK(derived.min_shots >= min_shots(0.01, 0.1));
    CHECK_THROWS_AS(shot_plan_for_success(1.5, 20, 0.1), std::invalid_argument);
}

TEST_CASE("epsilon under depolarizing noise") {
    CHECK(epsilon_under_noise(0.99, 10, -0.5) == doctest::Approx(0.2261).epsilon(1e-3));
    CHECK(epsilon_under_noise(1.0, 12345, -1.0) == doctest::Approx(0.5));
    CHECK(epsilon_under_noise(0.9, 0, -1.0 / std::sqrt(3.0)) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))));
    CHECK_THROWS_AS(epsilon_under_noise(0.99, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(epsilon_under_noise(0.99, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(epsilon_under_noise(0.99, -1, -0.5), std::invalid_argument);
}

TEST_CASE("order-of-magnitude shot counts") {
    CHECK(shots_order(2, 1.0) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(shots_order(100, 0.1) == doctest::Approx(100.0 * std::log(100.0) / 0.01).epsilon(1e-6));
    CHECK(shots_order(50, 0.2) == doctest::Approx(shots_order(50, 0.1) / 4.0));
    CHECK_THROWS_AS(shots_order(1, 0.1), std::invalid_argument);
}

TEST_CASE("qrac vs ising shot ratio") {
    CHECK(shot_ratio_qrac_vs_ising(1.0, 3, 40) == doctest::Approx(1.0));
    CHECK(shot_ratio_qrac_vs_ising(0.99, 3, 12) == doctest::Approx(0.7623).epsilon(1e-3));
    double previous = 1.0;
    for (const int nodes : {4, 8, 16, 32}) {
        const double r = shot_ratio_qrac_vs_ising(0.99, 3, nodes);
        CHECK(r < previous);
        previous = r;
    }
}

TEST_CASE("expected ratio of the Ising candidate under noise") {
    CHECK(expected_ratio_ising(1.0, 500, 18, 15) == doctest::Approx(1.0));
    CHECK(expected_ratio_ising(0.99, 100, 18, 18) == doctest::Approx(0.6830).epsilon(1e-4));
    // noise floor |E| / (2 cut*)
    CHECK(expected_ratio_ising(0.99, 1e6, 18, 15) == doctest::Approx(18.0 / 30.0).epsilon(1e-9));
    CHECK_THROWS_AS(expected_ratio_ising(0.99, 10, 18, 0), std::invalid_argument);
}

TEST_CASE("expected ratio lower bound of the QRAC candidate under noise") {
    CHECK(expected_ratio_qrac_lower(1.0, 500, 18, 18) == doctest::Approx(5.0 / 9.0));
    CHECK(expected_ratio_qrac_lower(0.99, 33, 18, 18) == doctest::Approx(0.5399).epsilon(1e-4));
    CHECK(expected_ratio_qrac_lower(0.99, 1e6, 18, 15) ==
          doctest::Approx(18.0 / 30.0).epsilon(1e-9));
}

TEST_CASE("ratio model bundles the same formulas") {
    NoisyRatioModel model;
    model.p = 0.99;
    model.n1 = 100.0;
    model.n3 = 33.0;
    model.edges = 18;
    model.opt_cut = 18;
    model.layers = 3;
    model.num_nodes = 12;
    CHECK(expected_ratio_ising(model) == doctest::Approx(expected_ratio_ising(0.99, 100, 18, 18)));
    CHECK(expected_ratio_qrac_lower(model) ==
          doctest::Approx(expected_ratio_qrac_lower(0.99, 33, 18, 18)));

    model.opt_cut = 20;  // opt above |E|
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}

TEST_CASE("both expected ratios are monotone toward the noise floor") {
    double previous_ising = 2.0, previous_qrac = 2.0;
    for (const double n : {0.0, 10.0, 50.0, 200.0, 1000.0}) {
        const double i = expected_ratio_ising(0.99, n, 18, 18);
        const double q = expected_ratio_qrac_lower(0.99, n / 3.0, 18, 18);
        CHECK(i <= previous_ising + 1e-15);
        CHECK(q <= previous_qrac + 1e-15);
        previous_ising = i;
        previous_qrac = q;
    }
    // N = 0 collapses to the noiseless anchors regardless of the graph
    CHECK(expected_ratio_ising(0.42, 0, 30, 17) == doctest::Approx(1.0));
    CHECK(expected_ratio_qrac_lower(0.42, 0, 30, 17) == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("crossover against the closed form") {
    // |E| = cut* closed form: N1 = 3 ln 9 / (2 (-ln p))
    for (const double p : {0.999, 0.99, 0.95}) {
        const auto result = find_crossover_n1(p, 1.0 / 3.0, 18, 18);
        REQUIRE(result.has_value());
        const double closed = 3.0 * std::log(9.0) / (2.0 * (-std::log(p)));
        CHECK(std::abs(result->n1_continuous - closed) < 1e-6);
        CHECK(std::abs(result->n1 - std::ceil(closed - 1e-9)) <= 1.0);
    }
    const auto main_case = find_crossover_n1(0.99, 1.0 / 3.0, 18, 18);
    REQUIRE(main_case.has_value());
    CHECK(main_case->n1 == 328);

    // closed-form scaling: halving -ln p doubles the crossover
    const auto a = find_crossover_n1(std::exp(-0.02), 1.0 / 3.0, 12, 12);
    const auto b = find_crossover_n1(std::exp(-0.01), 1.0 / 3.0, 12, 12);
    REQUIRE((a && b));
    CHECK(b->n1_continuous == doctest::Approx(2.0 * a->n1_continuous).epsilon(1e-6));

    // p extremely close to 1: crossover beyond the search range
    CHECK(!find_crossover_n1(1.0 - 1e-14, 1.0 / 3.0, 12, 12).has_value());
    CHECK_THROWS_AS(find_crossover_n1(1.0, 1.0 / 3.0, 12, 12), std::invalid_argument);
}

TEST_CASE("validity condition is strict") {
    CHECK(validity_condition(9, 9));        // bipartite, ratio 1
    CHECK(!validity_condition(3, 2));       // triangle, 2/3
    CHECK(!validity_condition(10, 9));      // exactly 0.9 fails the strict test
    CHECK(validity_condition(100, 91));
    CHECK_THROWS_AS(validity_condition(0, 0), std::invalid_argument);
}

TEST_CASE("hoeffding bound holds empirically at the planned shot count") {
    const double epsilon = 0.1, delta = 0.05;
    const long shots = min_shots(delta, epsilon);
    REQUIRE(shots == 150);

    Rng rng = make_rng(2024);
    const int trials = 2000;
    int sign_errors = 0;
    for (int t = 0; t < trials; ++t) {
        // Pr[X=1] = 1/2 + eps models a negative trace; the sign is wrong
        // when ones <= S/2.
        long ones = 0;
        for (long s = 0; s < shots; ++s) {
            if (uniform_double(rng) < 0.5 + epsilon) ++ones;
        }
        if (2 * ones <= shots) ++sign_errors;
    }
    const double rate = static_cast<double>(sign_errors) / trials;
    const double se = std::sqrt(delta * (1.0 - delta) / trials);
    CHECK(rate <= delta + 3.0 * se);
}

TEST_CASE("noise-adjusted shot bound matches the combined closed form") {
    // Composing S >= ln(1/delta)/(2 eps^2) with eps = p^N |Tr|/2 gives
    // S >= 2 ln(1/delta) / (p^{2N} Tr(P rho)^2), up to ceiling effects.
    for (const double p : {0.95, 0.99}) {
        for (const long n : {1L, 10L, 40L}) {
            for (const double trace : {-0.2, -0.5, -1.0 / std::sqrt(3.0)}) {
                const double delta = 0.03;
                const double eps = epsilon_under_noise(p, n, trace);
                const double combined = 2.0 * std::log(1.0 / delta) /
                                        (std::pow(p, 2.0 * n) * trace * trace);
                CHECK(std::abs(min_shots(delta, eps) - combined) <= 1.0);
            }
        }
    }
}

}  // TEST_SUITE
