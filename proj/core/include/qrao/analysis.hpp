#pragma once

#include <optional>

namespace qrao {

// Shot budget for sign estimation: S >= ln(1/delta) / (2 eps^2), where
// delta bounds the per-node sign-error probability and eps the bias of
// the measurement Bernoulli away from 1/2.
struct ShotPlan {
    double delta = 0.0;
    double epsilon = 0.0;
    long min_shots = 0;
    double alpha = 0.0;  // all-node success target used to derive delta, 0 if unset
};

// Closed-form model inputs for the noisy expected-ratio formulas.
struct NoisyRatioModel {
    double p = 1.0;       // per-application survival probability
    double n1 = 0.0;      // noise applications seen by the Ising candidate
    double n3 = 0.0;      // noise applications seen by the QRAC candidate
    long edges = 0;
    long opt_cut = 0;
    int layers = 0;
    int num_nodes = 0;

    void validate() const;
};

// ceil(ln(1/delta) / (2 eps^2)).
long min_shots(double delta, double epsilon);

// Derives delta from a target all-node success probability alpha via
// Bernoulli's inequality (delta <= ln(1/alpha)/|V|) and plans shots.
ShotPlan make_shot_plan(double delta, double epsilon);
ShotPlan shot_plan_for_success(double alpha, int num_nodes, double epsilon);

// eps = -p^N Tr(P rho)/2 for a negative trace under N depolarizing
// applications.
double epsilon_under_noise(double p, long applications, double trace);

// Order-of-magnitude shot count across |V| Pauli observables:
// |V| ln(|V|) / eps^2.
double shots_order(int num_nodes, double epsilon);

// Shot-count ratio QRAC vs Ising at maximum compression with l linear
// entanglement layers: p^(0.75 * l * |V|).
double shot_ratio_qrac_vs_ising(double p, int layers, int num_nodes);

// E(gamma_1') = p^N1 + (1 - p^N1) |E| / (2 cut*).
double expected_ratio_ising(double p, double n1, long edges, long opt_cut);
double expected_ratio_ising(const NoisyRatioModel& model);

// E(gamma_3') lower bound: (5/9) p^N3 + (1 - p^N3) |E| / (2 cut*).
double expected_ratio_qrac_lower(double p, double n3, long edges, long opt_cut);
double expected_ratio_qrac_lower(const NoisyRatioModel& model);

// Smallest N1 >= 0 such that the QRAC lower bound at N3 = qubit_ratio*N1
// meets or exceeds the Ising expectation, solved by bracketing +
// bisection on the continuous relaxation and then ceiled. Returns the
// continuous solution alongside; empty when no crossover exists in the
// search range.
struct CrossoverResult {
    double n1_continuous = 0.0;
    long n1 = 0;
};
std::optional<CrossoverResult> find_crossover_n1(double p, double qubit_ratio, long edges,
                                                 long opt_cut);

// True iff cut* / |E| > 9/10 (strict), the regime where the QRAC bound
// can dominate.
bool validity_condition(long edges, long opt_cut);

}  // namespace qrao
