#include "qrao/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qrao/encoding.hpp"
#include "qrao/rng.hpp"

namespace qrao {

namespace {

enum Stage : std::uint64_t { kStageGraph = 1, kStageVqe = 2, kStageRound = 3 };

std::uint64_t record_seed(const ExperimentConfig& cfg, int size, int graph_index, Method method,
                          Stage stage) {
    return derive_seed(cfg.master_seed,
                       {static_cast<std::uint64_t>(size), static_cast<std::uint64_t>(graph_index),
                        static_cast<std::uint64_t>(method), static_cast<std::uint64_t>(stage)});
}

std::string bits_to_string(const BitAssignment& bits) {
    std::string s;
    s.reserve(bits.size());
    for (const auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

BitAssignment bits_from_string(const std::string& s) {
    BitAssignment bits;
    bits.reserve(s.size());
    for (const char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string must contain only 0/1");
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

std::tuple<int, int, int> record_key(const ExperimentRecord& r) {
    return {r.size, r.graph_index, static_cast<int>(r.method)};
}

double number_or_nan(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

// Resume-time read: a crash can leave a truncated final line, which is
// dropped (and the file rewritten without it) so the run can redo that
// record. Corruption anywhere else still raises.
std::vector<ExperimentRecord> read_records_for_resume(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::pair<std::string, ExperimentRecord>> rows;
    std::string line;
    bool dropped_tail = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            rows.emplace_back(line, nlohmann::json::parse(line).get<ExperimentRecord>());
        } catch (const std::exception& err) {
            if (in.peek() == std::char_traits<char>::eof()) {
                dropped_tail = true;
                break;
            }
            throw std::runtime_error("records line " + std::to_string(line_no) + ": " +
                                     err.what());
        }
    }
    in.close();
    if (dropped_tail) {
        std::ofstream rewrite(path, std::ios::trunc);
        for (const auto& [text, rec] : rows) rewrite << text << '\n';
    }
    std::vector<ExperimentRecord> records;
    records.reserve(rows.size());
    for (auto& [text, rec] : rows) records.push_back(std::move(rec));
    return records;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Ising: return "ising";
        case Method::QracPauli: return "qrac-pauli";
        case Method::QracMagic: return "qrac-magic";
    }
    throw std::logic_error("invalid Method");
}

Method method_from_name(const std::string& name) {
    if (name == "ising") return Method::Ising;
    if (name == "qrac-pauli") return Method::QracPauli;
    if (name == "qrac-magic") return Method::QracMagic;
    throw std::invalid_argument("unknown method '" + name + "'");
}

void ExperimentConfig::validate() const {
    if (node_sizes.empty()) {
        throw std::invalid_argument("ExperimentConfig: node_sizes must be non-empty");
    }
    if (graphs_per_size < 1) {
        throw std::invalid_argument("ExperimentConfig: graphs_per_size must be >= 1");
    }
    if (degree < 1) {
        throw std::invalid_argument("ExperimentConfig: degree must be >= 1");
    }
    if (methods.empty()) {
        throw std::invalid_argument("ExperimentConfig: methods must be non-empty");
    }
    if (magic_rounds < 1 || rounding_shots < 1) {
        throw std::invalid_argument("ExperimentConfig: rounds/shots must be >= 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
    }
    vqe.validate();
    noise.validate();
}

ExperimentRecord run_single_record(const ExperimentConfig& cfg, int size, int graph_index,
                                   Method method) {
    ExperimentRecord rec;
    rec.size = size;
    rec.graph_index = graph_index;
    rec.degree = cfg.degree;
    rec.method = method;
    // The graph depends only on (size, index) so all methods share it.
    rec.graph_seed = derive_seed(cfg.master_seed, {static_cast<std::uint64_t>(size),
                                                   static_cast<std::uint64_t>(graph_index),
                                                   kStageGraph});

    const auto started = std::chrono::steady_clock::now();
    try {
        const Graph g = generate_random_regular(size, cfg.degree, rec.graph_seed);
        rec.num_nodes = g.num_nodes;
        rec.num_edges = g.num_edges();
        rec.opt_cut = max_cut_bruteforce(g).value;

        VqeConfig vqe_cfg = cfg.vqe;
        vqe_cfg.seed = record_seed(cfg, size, graph_index, method, kStageVqe);
        const std::uint64_t round_seed = record_seed(cfg, size, graph_index, method, kStageRound);

        RoundingOutcome outcome;
        if (method == Method::Ising) {
            const Hamiltonian h = build_ising_hamiltonian(g);
            const VqeResult vr = run_vqe(h, vqe_cfg, cfg.noise);
            rec.vqe_energy = vr.energy;
            rec.energy_ratio = vr.energy_ratio;
            rec.shots_used += vr.shots_used;
            outcome = computational_rounding(vr.candidate_state, g, cfg.rounding_shots, round_seed);
        } else {
            const QracAssignment a = assign_qrac(g);
            const Hamiltonian h = build_qrac_hamiltonian(g, a);
            const VqeResult vr = run_vqe(h, vqe_cfg, cfg.noise);
            rec.vqe_energy = vr.energy;
            rec.energy_ratio = vr.energy_ratio;
            rec.shots_used += vr.shots_used;
            if (method == Method::QracPauli) {
                const RoundingMode mode =
                    cfg.pauli_rounding_exact
                        ? RoundingMode::exact(round_seed)
                        : RoundingMode::sampled(cfg.rounding_shots, round_seed);
                outcome = pauli_rounding(vr.candidate_state, a, g, mode);
            } else {
                outcome = magic_rounding(vr.candidate_state, a, cfg.magic_rounds, g, round_seed);
            }
        }
        rec.bits = outcome.bits;
        rec.cut = outcome.cut;
        rec.ratio = outcome.ratio;
        rec.shots_used += outcome.shots_used;
    } catch (const std::exception& err) {
        rec.failed = true;
        rec.error = err.what();
    }
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg, const RecordSink& sink) {
    cfg.validate();

    std::vector<ExperimentRecord> existing;
    std::set<std::tuple<int, int, int>> done;
    if (!cfg.output_path.empty()) {
        std::ifstream probe(cfg.output_path);
        if (probe.good()) {
            probe.close();
            existing = read_records_for_resume(cfg.output_path);
            for (const auto& r : existing) done.insert(record_key(r));
        }
    }

    struct Job {
        int size;
        int graph_index;
        Method method;
    };
    std::vector<Job> jobs;
    for (const int size : cfg.node_sizes) {
        for (int g = 0; g < cfg.graphs_per_size; ++g) {
            for (const Method m : cfg.methods) {
                if (!done.count({size, g, static_cast<int>(m)})) {
                    jobs.push_back({size, g, m});
                }
            }
        }
    }

    std::vector<ExperimentRecord> produced;
    produced.reserve(jobs.size());
    std::mutex out_mutex;
    std::ofstream out;
    if (!cfg.output_path.empty()) {
        out.open(cfg.output_path, std::ios::app);
        if (!out) {
            throw std::runtime_error("cannot open output file: " + cfg.output_path);
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            const Job& job = jobs[i];
            ExperimentRecord rec = run_single_record(cfg, job.size, job.graph_index, job.method);
            std::lock_guard<std::mutex> lock(out_mutex);
            if (out.is_open()) {
                nlohmann::json j = rec;
                out << j.dump() << '\n';
                out.flush();
            }
            if (sink) sink(rec);
            produced.push_back(std::move(rec));
        }
    };

    const int n_workers = std::min<int>(cfg.workers, static_cast<int>(jobs.size()) > 0
                                                         ? static_cast<int>(jobs.size())
                                                         : 1);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<ExperimentRecord> all = std::move(existing);
    all.insert(all.end(), produced.begin(), produced.end());
    std::sort(all.begin(), all.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
        return record_key(a) < record_key(b);
    });
    return all;
}

std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord>& records) {
    std::map<std::pair<int, int>, std::vector<const ExperimentRecord*>> groups;
    for (const auto& r : records) {
        if (r.failed) continue;
        groups[{r.size, static_cast<int>(r.method)}].push_back(&r);
    }
    if (groups.empty()) {
        throw std::invalid_argument("aggregate: no successful records");
    }

    std::vector<SummaryRow> rows;
    for (const auto& [key, members] : groups) {
        if (members.size() < 2) {
            throw std::invalid_argument("aggregate: group (size=" + std::to_string(key.first) +
                                        ", method=" +
                                        method_name(static_cast<Method>(key.second)) +
                                        ") has fewer than 2 records");
        }
        auto stats = [&](auto getter) {
            double mean = 0.0;
            for (const auto* r : members) mean += getter(*r);
            mean /= static_cast<double>(members.size());
            double var = 0.0;
            for (const auto* r : members) {
                const double d = getter(*r) - mean;
                var += d * d;
            }
            var /= static_cast<double>(members.size() - 1);
            const double se = std::sqrt(var / static_cast<double>(members.size()));
            return std::pair<double, double>{mean, 1.96 * se};
        };
        SummaryRow row;
        row.size = key.first;
        row.method = static_cast<Method>(key.second);
        row.count = static_cast<int>(members.size());
        std::tie(row.mean_ratio, row.ci95_ratio) =
            stats([](const ExperimentRecord& r) { return r.ratio; });
        std::tie(row.mean_energy_ratio, row.ci95_energy_ratio) =
            stats([](const ExperimentRecord& r) { return r.energy_ratio; });
        rows.push_back(row);
    }
    return rows;
}

std::vector<NoiseImpactRow> compare_noise_impact(const std::vector<SummaryRow>& baseline,
                                                 const std::vector<SummaryRow>& noisy) {
    auto key_of = [](const SummaryRow& r) { return std::pair<int, int>{r.size, static_cast<int>(r.method)}; };
    std::map<std::pair<int, int>, const SummaryRow*> noisy_by_key;
    for (const auto& r : noisy) noisy_by_key[key_of(r)] = &r;

    if (baseline.size() != noisy.size()) {
        throw std::invalid_argument("compare_noise_impact: summaries have different groups");
    }
    std::vector<NoiseImpactRow> rows;
    for (const auto& base : baseline) {
        const auto it = noisy_by_key.find(key_of(base));
        if (it == noisy_by_key.end()) {
            throw std::invalid_argument("compare_noise_impact: missing group (size=" +
                                        std::to_string(base.size) + ", method=" +
                                        method_name(base.method) + ") in noisy summary");
        }
        const SummaryRow& other = *it->second;
        NoiseImpactRow row;
        row.size = base.size;
        row.method = base.method;
        row.baseline_mean = base.mean_ratio;
        row.noisy_mean = other.mean_ratio;
        row.drop = base.mean_ratio - other.mean_ratio;
        row.significant = (base.mean_ratio - base.ci95_ratio) > (other.mean_ratio + other.ci95_ratio);
        rows.push_back(row);
    }
    return rows;
}

void to_json(nlohmann::json& j, const ExperimentRecord& r) {
    j = nlohmann::json{{"size", r.size},
                       {"graph_index", r.graph_index},
                       {"graph_seed", r.graph_seed},
                       {"degree", r.degree},
                       {"method", method_name(r.method)},
                       {"num_nodes", r.num_nodes},
                       {"num_edges", r.num_edges},
                       {"opt_cut", r.opt_cut},
                       {"vqe_energy", r.vqe_energy},
                       {"energy_ratio", r.energy_ratio},
                       {"bits", bits_to_string(r.bits)},
                       {"cut", r.cut},
                       {"ratio", r.ratio},
                       {"wall_time_s", r.wall_time_s},
                       {"shots_used", r.shots_used},
                       {"failed", r.failed},
                       {"error", r.error}};
}

void from_json(const nlohmann::json& j, ExperimentRecord& r) {
    r.size = j.at("size").get<int>();
    r.graph_index = j.at("graph_index").get<int>();
    r.graph_seed = j.at("graph_seed").get<std::uint64_t>();
    r.degree = j.value("degree", 3);
    r.method = method_from_name(j.at("method").get<std::string>());
    r.num_nodes = j.at("num_nodes").get<int>();
    r.num_edges = j.at("num_edges").get<int>();
    r.opt_cut = j.at("opt_cut").get<long>();
    r.vqe_energy = number_or_nan(j, "vqe_energy");
    r.energy_ratio = number_or_nan(j, "energy_ratio");
    r.bits = bits_from_string(j.at("bits").get<std::string>());
    r.cut = j.at("cut").get<long>();
    r.ratio = number_or_nan(j, "ratio");
    r.wall_time_s = j.value("wall_time_s", 0.0);
    r.shots_used = j.value("shots_used", 0L);
    r.failed = j.value("failed", false);
    r.error = j.value("error", std::string{});
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    std::vector<std::string> methods;
    methods.reserve(c.methods.size());
    for (const Method m : c.methods) methods.push_back(method_name(m));
    j = nlohmann::json{{"node_sizes", c.node_sizes},
                       {"graphs_per_size", c.graphs_per_size},
                       {"degree", c.degree},
                       {"methods", methods},
                       {"vqe",
                        {{"layers", c.vqe.layers},
                         {"sweeps", c.vqe.sweeps},
                         {"shots_per_term", c.vqe.shots_per_term},
                         {"exact", c.vqe.exact}}},
                       {"noise",
                        {{"global_p", c.noise.global_p},
                         {"global_applications", c.noise.global_applications},
                         {"cnot_error", c.noise.cnot_error}}},
                       {"magic_rounds", c.magic_rounds},
                       {"rounding_shots", c.rounding_shots},
                       {"pauli_rounding_exact", c.pauli_rounding_exact},
                       {"master_seed", c.master_seed},
                       {"output_path", c.output_path},
                       {"workers", c.workers}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
    c = ExperimentConfig{};
    c.node_sizes = j.at("node_sizes").get<std::vector<int>>();
    c.graphs_per_size = j.value("graphs_per_size", 10);
    c.degree = j.value("degree", 3);
    if (j.contains("methods")) {
        c.methods.clear();
        for (const auto& name : j.at("methods")) {
            c.methods.push_back(method_from_name(name.get<std::string>()));
        }
    }
    if (j.contains("vqe")) {
        const auto& v = j.at("vqe");
        c.vqe.layers = v.value("layers", 3);
        c.vqe.sweeps = v.value("sweeps", 2);
        c.vqe.shots_per_term = v.value("shots_per_term", 1024L);
        c.vqe.exact = v.value("exact", false);
    }
    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        c.noise.global_p = n.value("global_p", 1.0);
        c.noise.global_applications = n.value("global_applications", 0L);
        c.noise.cnot_error = n.value("cnot_error", 0.0);
    }
    c.magic_rounds = j.value("magic_rounds", 1024L);
    c.rounding_shots = j.value("rounding_shots", 1024L);
    c.pauli_rounding_exact = j.value("pauli_rounding_exact", true);
    c.master_seed = j.value("master_seed", 0ULL);
    c.output_path = j.value("output_path", std::string{});
    c.workers = j.value("workers", 1);
}

std::vector<ExperimentRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open records file: " + path);
    }
    std::vector<ExperimentRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            records.push_back(nlohmann::json::parse(line).get<ExperimentRecord>());
        } catch (const std::exception& err) {
            throw std::runtime_error("records line " + std::to_string(line_no) + ": " +
                                     err.what());
        }
    }
    return records;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "size,method,count,mean_ratio,ci95_ratio,mean_energy_ratio,ci95_energy_ratio\n";
    for (const auto& r : rows) {
        out << r.size << ',' << method_name(r.method) << ',' << r.count << ',' << r.mean_ratio
            << ',' << r.ci95_ratio << ',' << r.mean_energy_ratio << ',' << r.ci95_energy_ratio
            << '\n';
    }
}

void write_noise_impact_csv(std::ostream& out, const std::vector<NoiseImpactRow>& rows) {
    out << "size,method,baseline_mean,noisy_mean,drop,significant\n";
    for (const auto& r : rows) {
        out << r.size << ',' << method_name(r.method) << ',' << r.baseline_mean << ','
            << r.noisy_mean << ',' << r.drop << ',' << (r.significant ? 1 : 0) << '\n';
    }
}

void verify_record(const ExperimentRecord& r) {
    if (r.failed) return;
    const Graph g = generate_random_regular(r.num_nodes, r.degree, r.graph_seed);
    if (g.num_edges() != r.num_edges) {
        throw std::runtime_error("record verification: edge count mismatch");
    }
    const long cut = cut_value(g, r.bits);
    if (cut != r.cut) {
        throw std::runtime_error("record verification: cut mismatch");
    }
    const long opt = max_cut_bruteforce(g).value;
    if (opt != r.opt_cut) {
        throw std::runtime_error("record verification: optimal cut mismatch");
    }
    if (std::isfinite(r.ratio) &&
        std::abs(r.ratio - approximation_ratio(r.cut, r.opt_cut)) > 1e-12) {
        throw std::runtime_error("record verification: ratio mismatch");
    }
}

}  // namespace qrao
