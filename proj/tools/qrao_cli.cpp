// Command-line harness: graph generation, Hamiltonian encoding, VQE,
// rounding, closed-form noise/shot bounds, and batch experiments.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qrao/analysis.hpp"
#include "qrao/encoding.hpp"
#include "qrao/rng.hpp"
#include "qrao/graph.hpp"
#include "qrao/harness.hpp"
#include "qrao/rounding.hpp"
#include "qrao/simulate.hpp"
#include "qrao/vqe.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + out_path);
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

struct VqeCliOptions {
    std::string graph_path;
    std::string encoding = "qrac";
    int layers = 3;
    int sweeps = 2;
    long shots = 1024;
    bool exact = false;
    std::uint64_t seed = 0;
    double cnot_error = 0.0;
    double global_p = 1.0;
    long global_applications = 0;
};

void add_vqe_options(CLI::App* cmd, VqeCliOptions& opt) {
    cmd->add_option("--graph", opt.graph_path, "edge-list graph file")->required();
    cmd->add_option("--encoding", opt.encoding, "ising or qrac")
        ->check(CLI::IsMember({"ising", "qrac"}));
    cmd->add_option("--layers", opt.layers, "ansatz layers")->check(CLI::PositiveNumber);
    cmd->add_option("--sweeps", opt.sweeps, "NFT parameter sweeps")->check(CLI::PositiveNumber);
    cmd->add_option("--shots", opt.shots, "shots per Pauli term")->check(CLI::PositiveNumber);
    cmd->add_flag("--exact", opt.exact, "evaluate energies exactly instead of sampling");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--cnot-error", opt.cnot_error, "two-qubit depolarizing error per CNOT")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--global-p", opt.global_p, "global depolarizing survival probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--global-n", opt.global_applications,
                    "global depolarizing application count")
        ->check(CLI::NonNegativeNumber);
}

struct VqeRun {
    qrao::Graph graph;
    std::optional<qrao::QracAssignment> assignment;
    qrao::Hamiltonian hamiltonian;
    qrao::VqeResult result;
};

VqeRun execute_vqe(const VqeCliOptions& opt) {
    VqeRun run{qrao::read_edge_list_file(opt.graph_path), {}, {}, {}};
    if (opt.encoding == "ising") {
        run.hamiltonian = qrao::build_ising_hamiltonian(run.graph);
    } else {
        run.assignment = qrao::assign_qrac(run.graph);
        run.hamiltonian = qrao::build_qrac_hamiltonian(run.graph, *run.assignment);
    }
    qrao::VqeConfig cfg;
    cfg.layers = opt.layers;
    cfg.sweeps = opt.sweeps;
    cfg.shots_per_term = opt.shots;
    cfg.exact = opt.exact;
    cfg.seed = opt.seed;
    qrao::NoiseParams noise;
    noise.cnot_error = opt.cnot_error;
    noise.global_p = opt.global_p;
    noise.global_applications = opt.global_applications;
    run.result = qrao::run_vqe(run.hamiltonian, cfg, noise);
    return run;
}

int run_app(int argc, char** argv) {
    CLI::App app{"MaxCut via Ising and (3,1)-QRAC Hamiltonians: encode, optimize, round"};
    app.require_subcommand(1);

    // --- gen-graph ---
    auto* gen = app.add_subcommand("gen-graph", "generate a random d-regular graph");
    int gen_nodes = 8;
    int gen_degree = 3;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--nodes", gen_nodes, "node count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--degree", gen_degree, "node degree")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    // --- encode ---
    auto* enc = app.add_subcommand("encode", "build the Ising or QRAC Hamiltonian");
    std::string enc_graph, enc_encoding = "qrac", enc_out;
    enc->add_option("--graph", enc_graph, "edge-list graph file")->required();
    enc->add_option("--encoding", enc_encoding, "ising or qrac")
        ->check(CLI::IsMember({"ising", "qrac"}));
    enc->add_option("--out", enc_out, "output path (stdout when omitted)");

    // --- vqe ---
    auto* vqe_cmd = app.add_subcommand("vqe", "optimize a candidate state with NFT");
    VqeCliOptions vqe_opt;
    std::string vqe_out, vqe_trace_csv, vqe_circuit_dump;
    add_vqe_options(vqe_cmd, vqe_opt);
    vqe_cmd->add_option("--out", vqe_out, "result JSON path (stdout when omitted)");
    vqe_cmd->add_option("--trace-csv", vqe_trace_csv, "write the energy trace as CSV");
    vqe_cmd->add_option("--dump-circuit", vqe_circuit_dump, "write the ansatz as a JSON gate list");

    // --- round ---
    auto* round_cmd =
        app.add_subcommand("round", "run VQE and round the candidate state to a bitstring");
    VqeCliOptions round_vqe_opt;
    std::string round_method = "pauli", round_out;
    long magic_rounds = 1024;
    long rounding_shots = 1024;
    bool pauli_sampled = false;
    add_vqe_options(round_cmd, round_vqe_opt);
    round_cmd->add_option("--method", round_method, "pauli, magic or computational")
        ->check(CLI::IsMember({"pauli", "magic", "computational"}));
    round_cmd->add_option("--rounds", magic_rounds, "magic rounding repetitions")
        ->check(CLI::PositiveNumber);
    round_cmd->add_option("--rounding-shots", rounding_shots,
                          "shots for computational or sampled Pauli rounding")
        ->check(CLI::PositiveNumber);
    round_cmd->add_flag("--sampled-pauli", pauli_sampled,
                        "estimate Pauli signs from shots instead of exact traces");
    round_cmd->add_option("--out", round_out, "outcome JSON path (stdout when omitted)");

    // --- bounds ---
    auto* bounds = app.add_subcommand("bounds", "closed-form noise and shot-count analysis");
    double b_p = 0.99, b_delta = 0.05, b_epsilon = 0.1, b_ratio = 1.0 / 3.0;
    long b_n = 0;
    int b_nodes = 12, b_layers = 3;
    long b_edges = 18, b_opt = 18;
    std::string b_out;
    bool b_sweep = false;
    double b_sweep_max = 600.0, b_sweep_step = 1.0;
    bounds->add_option("--p", b_p, "depolarizing survival probability")
        ->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--applications", b_n, "noise application count N")
        ->check(CLI::NonNegativeNumber);
    bounds->add_option("--nodes", b_nodes, "|V|")->check(CLI::PositiveNumber);
    bounds->add_option("--edges", b_edges, "|E|")->check(CLI::PositiveNumber);
    bounds->add_option("--opt-cut", b_opt, "optimal cut value")->check(CLI::PositiveNumber);
    bounds->add_option("--layers", b_layers, "ansatz layers l")->check(CLI::PositiveNumber);
    bounds->add_option("--delta", b_delta, "per-node sign error probability")
        ->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--epsilon", b_epsilon, "Bernoulli bias epsilon")
        ->check(CLI::PositiveNumber);
    bounds->add_option("--qubit-ratio", b_ratio, "N3/N1 ratio for the crossover");
    bounds->add_flag("--sweep", b_sweep, "emit CSV of (N1, ising ratio, qrac lower bound)");
    bounds->add_option("--sweep-max", b_sweep_max, "largest N1 in sweep mode");
    bounds->add_option("--sweep-step", b_sweep_step, "N1 step in sweep mode");
    bounds->add_option("--out", b_out, "output path (stdout when omitted)");

    // --- experiment ---
    auto* exp_cmd = app.add_subcommand("experiment", "run the batch experiment grid");
    std::string exp_config, exp_out;
    int exp_workers = 0;
    std::uint64_t exp_seed = 0;
    bool exp_seed_set = false;
    exp_cmd->add_option("--config", exp_config, "experiment config JSON")->required();
    exp_cmd->add_option("--out", exp_out, "records JSONL path (overrides config)");
    exp_cmd->add_option("--workers", exp_workers, "worker threads (overrides config)");
    exp_cmd->add_option("--seed", exp_seed, "master seed (overrides config)")
        ->each([&](const std::string&) { exp_seed_set = true; });

    // --- summarize ---
    auto* sum_cmd = app.add_subcommand("summarize", "aggregate records into a summary table");
    std::string sum_records, sum_baseline, sum_out;
    sum_cmd->add_option("--records", sum_records, "records JSONL file")->required();
    sum_cmd->add_option("--baseline", sum_baseline,
                        "baseline records JSONL; emits per-group noise-impact drops");
    sum_cmd->add_option("--out", sum_out, "output CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (gen->parsed()) {
        const qrao::Graph g = qrao::generate_random_regular(gen_nodes, gen_degree, gen_seed);
        std::ostringstream text;
        qrao::write_edge_list(text, g);
        emit(text.str(), gen_out);
        return 0;
    }

    if (enc->parsed()) {
        const qrao::Graph g = qrao::read_edge_list_file(enc_graph);
        json doc;
        if (enc_encoding == "ising") {
            doc = qrao::build_ising_hamiltonian(g);
        } else {
            const qrao::QracAssignment a = qrao::assign_qrac(g);
            doc = qrao::build_qrac_hamiltonian(g, a);
            doc["assignment"] = a;
        }
        emit(doc.dump(2), enc_out);
        return 0;
    }

    if (vqe_cmd->parsed()) {
        const VqeRun run = execute_vqe(vqe_opt);
        json doc = run.result;
        doc["encoding"] = vqe_opt.encoding;
        doc["num_qubits"] = run.hamiltonian.num_qubits;
        emit(doc.dump(2), vqe_out);
        if (!vqe_trace_csv.empty()) {
            std::ostringstream csv;
            csv << "update,energy\n";
            for (std::size_t i = 0; i < run.result.energy_trace.size(); ++i) {
                csv << i << ',' << run.result.energy_trace[i] << '\n';
            }
            emit(csv.str(), vqe_trace_csv);
        }
        if (!vqe_circuit_dump.empty()) {
            const json circuit = qrao::build_hea(run.hamiltonian.num_qubits, vqe_opt.layers);
            emit(circuit.dump(2), vqe_circuit_dump);
        }
        return 0;
    }

    if (round_cmd->parsed()) {
        const VqeRun run = execute_vqe(round_vqe_opt);
        const std::uint64_t round_seed = qrao::derive_seed(round_vqe_opt.seed, {0x60D0u});
        qrao::RoundingOutcome outcome;
        if (round_method == "computational") {
            if (round_vqe_opt.encoding != "ising") {
                throw std::runtime_error("computational rounding requires --encoding ising");
            }
            outcome = qrao::computational_rounding(run.result.candidate_state, run.graph,
                                                   rounding_shots, round_seed);
        } else {
            if (!run.assignment) {
                throw std::runtime_error(round_method + " rounding requires --encoding qrac");
            }
            if (round_method == "pauli") {
                const auto mode = pauli_sampled
                                      ? qrao::RoundingMode::sampled(rounding_shots, round_seed)
                                      : qrao::RoundingMode::exact(round_seed);
                outcome =
                    qrao::pauli_rounding(run.result.candidate_state, *run.assignment, run.graph, mode);
            } else {
                outcome = qrao::magic_rounding(run.result.candidate_state, *run.assignment,
                                               magic_rounds, run.graph, round_seed);
            }
        }
        json doc = outcome;
        doc["vqe_energy"] = run.result.energy;
        doc["energy_ratio"] = run.result.energy_ratio;
        emit(doc.dump(2), round_out);
        return 0;
    }

    if (bounds->parsed()) {
        if (b_sweep) {
            std::ostringstream csv;
            csv << "n1,ising_expected_ratio,qrac_lower_bound\n";
            for (double n1 = 0.0; n1 <= b_sweep_max; n1 += b_sweep_step) {
                csv << n1 << ',' << qrao::expected_ratio_ising(b_p, n1, b_edges, b_opt) << ','
                    << qrao::expected_ratio_qrac_lower(b_p, b_ratio * n1, b_edges, b_opt) << '\n';
            }
            emit(csv.str(), b_out);
            return 0;
        }
        json doc;
        doc["p"] = b_p;
        doc["applications"] = b_n;
        doc["nodes"] = b_nodes;
        doc["edges"] = b_edges;
        doc["opt_cut"] = b_opt;
        doc["layers"] = b_layers;
        doc["delta"] = b_delta;
        doc["epsilon"] = b_epsilon;
        qrao::NoisyRatioModel model;
        model.p = b_p;
        model.n1 = static_cast<double>(b_n);
        model.n3 = static_cast<double>(b_n);
        model.edges = b_edges;
        model.opt_cut = b_opt;
        model.layers = b_layers;
        model.num_nodes = b_nodes;
        doc["min_shots"] = qrao::min_shots(b_delta, b_epsilon);
        doc["shots_order"] = qrao::shots_order(b_nodes, b_epsilon);
        doc["shot_ratio_qrac_vs_ising"] = qrao::shot_ratio_qrac_vs_ising(b_p, b_layers, b_nodes);
        doc["expected_ratio_ising"] = qrao::expected_ratio_ising(model);
        doc["expected_ratio_qrac_lower"] = qrao::expected_ratio_qrac_lower(model);
        doc["validity_condition"] = qrao::validity_condition(b_edges, b_opt);
        if (b_p < 1.0) {
            const auto crossover = qrao::find_crossover_n1(b_p, b_ratio, b_edges, b_opt);
            if (crossover) {
                doc["crossover_n1"] = crossover->n1;
                doc["crossover_n1_continuous"] = crossover->n1_continuous;
            } else {
                doc["crossover_n1"] = nullptr;
            }
        }
        emit(doc.dump(2), b_out);
        return 0;
    }

    if (exp_cmd->parsed()) {
        std::ifstream in(exp_config);
        if (!in) {
            throw std::runtime_error("cannot open config file: " + exp_config);
        }
        qrao::ExperimentConfig cfg = json::parse(in).get<qrao::ExperimentConfig>();
        if (!exp_out.empty()) cfg.output_path = exp_out;
        if (exp_workers > 0) cfg.workers = exp_workers;
        if (exp_seed_set) cfg.master_seed = exp_seed;
        int done = 0;
        const auto records = qrao::run_experiment(cfg, [&](const qrao::ExperimentRecord& rec) {
            ++done;
            std::cerr << "[" << done << "] size=" << rec.size << " graph=" << rec.graph_index
                      << " method=" << qrao::method_name(rec.method)
                      << (rec.failed ? " FAILED: " + rec.error
                                     : " ratio=" + std::to_string(rec.ratio))
                      << '\n';
        });
        std::cerr << records.size() << " records total";
        if (!cfg.output_path.empty()) std::cerr << " in " << cfg.output_path;
        std::cerr << '\n';
        return 0;
    }

    if (sum_cmd->parsed()) {
        const auto records = qrao::read_records(sum_records);
        for (const auto& r : records) qrao::verify_record(r);
        const auto summary = qrao::aggregate(records);
        std::ostringstream csv;
        if (sum_baseline.empty()) {
            qrao::write_summary_csv(csv, summary);
        } else {
            const auto baseline = qrao::aggregate(qrao::read_records(sum_baseline));
            qrao::write_noise_impact_csv(csv, qrao::compare_noise_impact(baseline, summary));
        }
        emit(csv.str(), sum_out);
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
}
