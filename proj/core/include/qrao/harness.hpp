#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrao/graph.hpp"
#include "qrao/rounding.hpp"
#include "qrao/simulate.hpp"
#include "qrao/vqe.hpp"

namespace qrao {

enum class Method { Ising, QracPauli, QracMagic };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct ExperimentConfig {
    std::vector<int> node_sizes;
    int graphs_per_size = 10;
    int degree = 3;
    std::vector<Method> methods{Method::Ising, Method::QracPauli, Method::QracMagic};
    VqeConfig vqe;
    NoiseParams noise;
    long magic_rounds = 1024;
    long rounding_shots = 1024;
    bool pauli_rounding_exact = true;
    std::uint64_t master_seed = 0;
    std::string output_path;  // JSONL sink; empty disables file output
    int workers = 1;

    void validate() const;
};

// One pipeline run: graph -> encode -> VQE -> round. Self-contained:
// the graph regenerates from (num_nodes, degree, graph_seed).
struct ExperimentRecord {
    int size = 0;
    int graph_index = 0;
    std::uint64_t graph_seed = 0;
    int degree = 3;
    Method method = Method::Ising;
    int num_nodes = 0;
    int num_edges = 0;
    long opt_cut = 0;
    double vqe_energy = 0.0;
    double energy_ratio = 0.0;
    BitAssignment bits;
    long cut = 0;
    double ratio = 0.0;
    double wall_time_s = 0.0;
    long shots_used = 0;
    bool failed = false;
    std::string error;
};

// Runs the full experiment grid. Completed (size, graph, method) keys
// already present in output_path are skipped, so an interrupted run can
// resume. Failed jobs become failed records; the run continues. Records
// are returned sorted by (size, graph_index, method); with workers > 1
// the file append order may differ.
using RecordSink = std::function<void(const ExperimentRecord&)>;
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg,
                                             const RecordSink& sink = {});

// Executes a single (size, graph index, method) cell; exposed so tests
// and the acceptance suite can drive the same pipeline directly.
ExperimentRecord run_single_record(const ExperimentConfig& cfg, int size, int graph_index,
                                   Method method);

struct SummaryRow {
    int size = 0;
    Method method = Method::Ising;
    int count = 0;
    double mean_ratio = 0.0;
    double ci95_ratio = 0.0;
    double mean_energy_ratio = 0.0;
    double ci95_energy_ratio = 0.0;
};

// Per-(size, method) mean and 95% normal-approximation confidence
// interval (mean +- 1.96 * sd / sqrt(n)). Failed records are skipped;
// every surviving group needs at least two records.
std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord>& records);

struct NoiseImpactRow {
    int size = 0;
    Method method = Method::Ising;
    double baseline_mean = 0.0;
    double noisy_mean = 0.0;
    double drop = 0.0;  // baseline - noisy
    bool significant = false;  // confidence intervals disjoint
};

std::vector<NoiseImpactRow> compare_noise_impact(const std::vector<SummaryRow>& baseline,
                                                 const std::vector<SummaryRow>& noisy);

// JSONL persistence.
void to_json(nlohmann::json& j, const ExperimentRecord& r);
void from_json(const nlohmann::json& j, ExperimentRecord& r);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

std::vector<ExperimentRecord> read_records(const std::string& path);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_noise_impact_csv(std::ostream& out, const std::vector<NoiseImpactRow>& rows);

// Recomputes cut and ratio from the record's seed-derived graph and
// stored bits; throws on mismatch.
void verify_record(const ExperimentRecord& r);

}  // namespace qrao
