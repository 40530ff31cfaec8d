#include "qrao/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qrao {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
}

void check_survival(double p, bool allow_one) {
    if (!(p > 0.0) || p > 1.0 || (!allow_one && p == 1.0)) {
        throw std::invalid_argument("survival probability out of range");
    }
}

void check_cut_pair(long edges, long opt_cut) {
    if (opt_cut <= 0) {
        throw std::invalid_argument("optimal cut must be positive");
    }
    if (edges < opt_cut) {
        throw std::invalid_argument("edge count below optimal cut");
    }
}

}  // namespace

void NoisyRatioModel::validate() const {
    check_survival(p, true);
    if (n1 < 0.0 || n3 < 0.0) {
        throw std::invalid_argument("NoisyRatioModel: application counts must be non-negative");
    }
    check_cut_pair(edges, opt_cut);
}

long min_shots(double delta, double epsilon) {
    check_delta(delta);
    check_epsilon(epsilon);
    return static_cast<long>(std::ceil(std::log(1.0 / delta) / (2.0 * epsilon * epsilon)));
}

ShotPlan make_shot_plan(double delta, double epsilon) {
    ShotPlan plan;
    plan.delta = delta;
    plan.epsilon = epsilon;
    plan.min_shots = min_shots(delta, epsilon);
    return plan;
}

ShotPlan shot_plan_for_success(double alpha, int num_nodes, double epsilon) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (num_nodes < 1) {
        throw std::invalid_argument("num_nodes must be positive");
    }
    // alpha <= (1 - delta)^|V| <= exp(-delta |V|)  =>  delta <= ln(1/alpha)/|V|
    const double delta = std::log(1.0 / alpha) / static_cast<double>(num_nodes);
    ShotPlan plan = make_shot_plan(delta, epsilon);
    plan.alpha = alpha;
    return plan;
}

double epsilon_under_noise(double p, long applications, double trace) {
    check_survival(p, true);
    if (applications < 0) {
        throw std::invalid_argument("application count must be non-negative");
    }
    if (!(trace < 0.0)) {
        throw std::invalid_argument("trace must be negative");
    }
    return -std::pow(p, static_cast<double>(applications)) * trace / 2.0;
}

double shots_order(int num_nodes, double epsilon) {
    if (num_nodes < 2) {
        throw std::invalid_argument("shots_order: need at least 2 nodes");
    }
    check_epsilon(epsilon);
    const double v = static_cast<double>(num_nodes);
    return v * std::log(v) / (epsilon * epsilon);
}

double shot_ratio_qrac_vs_ising(double p, int layers, int num_nodes) {
    check_survival(p, true);
    if (layers < 1 || num_nodes < 1) {
        throw std::invalid_argument("shot_ratio: layers and num_nodes must be positive");
    }
    return std::pow(p, 0.75 * static_cast<double>(layers) * static_cast<double>(num_nodes));
}

double expected_ratio_ising(double p, double n1, long edges, long opt_cut) {
    check_survival(p, true);
    if (n1 < 0.0) {
        throw std::invalid_argument("n1 must be non-negative");
    }
    check_cut_pair(edges, opt_cut);
    const double survive = std::pow(p, n1);
    const double floor = static_cast<double>(edges) / (2.0 * static_cast<double>(opt_cut));
    return survive + (1.0 - survive) * floor;
}

double expected_ratio_qrac_lower(double p, double n3, long edges, long opt_cut) {
    check_survival(p, true);
    if (n3 < 0.0) {
        throw std::invalid_argument("n3 must be non-negative");
    }
    check_cut_pair(edges, opt_cut);
    const double survive = std::pow(p, n3);
    const double floor = static_cast<double>(edges) / (2.0 * static_cast<double>(opt_cut));
    return (5.0 / 9.0) * survive + (1.0 - survive) * floor;
}

double expected_ratio_ising(const NoisyRatioModel& model) {
    model.validate();
    return expected_ratio_ising(model.p, model.n1, model.edges, model.opt_cut);
}

double expected_ratio_qrac_lower(const NoisyRatioModel& model) {
    model.validate();
    return expected_ratio_qrac_lower(model.p, model.n3, model.edges, model.opt_cut);
}

std::optional<CrossoverResult> find_crossover_n1(double p, double qubit_ratio, long edges,
                                                 long opt_cut) {
    check_survival(p, false);
    if (!(qubit_ratio > 0.0 && qubit_ratio < 1.0)) {
        throw std::invalid_argument("qubit_ratio must lie in (0, 1)");
    }
    check_cut_pair(edges, opt_cut);

    auto gap = [&](double n1) {
        return expected_ratio_qrac_lower(p, qubit_ratio * n1, edges, opt_cut) -
               expected_ratio_ising(p, n1, edges, opt_cut);
    };

    if (gap(0.0) >= 0.0) {
        return CrossoverResult{0.0, 0};
    }
    // Bracket the sign change; both curves decay toward the same noise
    // floor, so the gap eventually turns non-negative whenever a
    // crossover exists.
    double lo = 0.0, hi = 1.0;
    const double limit = 1e12;
    while (gap(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > limit) {
            return std::nullopt;
        }
    }
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-9; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    CrossoverResult result;
    result.n1_continuous = hi;
    result.n1 = static_cast<long>(std::ceil(hi - 1e-9));
    return result;
}

bool validity_condition(long edges, long opt_cut) {
    if (edges <= 0) {
        throw std::invalid_argument("validity_condition: edges must be positive");
    }
    return static_cast<double>(opt_cut) / static_cast<double>(edges) > 0.9;
}

}  // namespace qrao
