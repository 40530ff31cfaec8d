#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qrao/harness.hpp"

using namespace qrao;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.node_sizes = {4};
    cfg.graphs_per_size = 2;
    cfg.methods = {Method::Ising, Method::QracPauli};
    cfg.vqe.layers = 1;
    cfg.vqe.sweeps = 1;
    cfg.vqe.exact = true;
    cfg.magic_rounds = 32;
    cfg.rounding_shots = 64;
    cfg.master_seed = 11;
    return cfg;
}

// Serialized form without the timing field, for determinism comparisons.
nlohmann::json stable_json(const ExperimentRecord& r) {
    nlohmann::json j = r;
    j.erase("wall_time_s");
    return j;
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::remove(path.c_str());
    }
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("small experiment produces valid self-contained records") {
    const auto records = run_experiment(small_config());
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        CHECK(!r.failed);
        CHECK(r.num_nodes == 4);
        CHECK(r.opt_cut > 0);
        CHECK(r.ratio >= 0.0);
        CHECK(r.ratio <= 1.0);
        CHECK(r.energy_ratio <= 1.0 + 1e-9);
        CHECK_NOTHROW(verify_record(r));
    }
    // methods share each graph
    CHECK(records[0].graph_seed == records[1].graph_seed);
}

TEST_CASE("experiment output is a pure function of the config") {
    const auto a = run_experiment(small_config());
    const auto b = run_experiment(small_config());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(stable_json(a[i]) == stable_json(b[i]));
    }
}

TEST_CASE("worker pool does not change the record set") {
    ExperimentConfig parallel = small_config();
    parallel.workers = 2;
    const auto a = run_experiment(small_config());
    const auto b = run_experiment(parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(stable_json(a[i]) == stable_json(b[i]));
    }
}

TEST_CASE("interrupted runs resume without recomputing finished records") {
    TempPath tmp("qrao_records_resume.jsonl");

    ExperimentConfig first = small_config();
    first.graphs_per_size = 1;
    first.output_path = tmp.path;
    const auto partial = run_experiment(first);
    CHECK(partial.size() == 2);

    ExperimentConfig full = small_config();
    full.output_path = tmp.path;
    const auto resumed = run_experiment(full);
    CHECK(resumed.size() == 4);

    // resumed set matches an uninterrupted run record-for-record
    ExperimentConfig clean = small_config();
    const auto straight = run_experiment(clean);
    REQUIRE(straight.size() == resumed.size());
    for (std::size_t i = 0; i < straight.size(); ++i) {
        CHECK(stable_json(straight[i]) == stable_json(resumed[i]));
    }

    // file has exactly one line per record
    const auto loaded = read_records(tmp.path);
    CHECK(loaded.size() == 4);
}

TEST_CASE("a truncated trailing line does not block resumption") {
    TempPath tmp("qrao_records_truncated.jsonl");

    ExperimentConfig first = small_config();
    first.graphs_per_size = 1;
    first.output_path = tmp.path;
    run_experiment(first);
    {
        std::ofstream out(tmp.path, std::ios::app);
        out << R"({"size": 4, "graph_index": 1, "met)";  // crash artifact
    }

    ExperimentConfig full = small_config();
    full.output_path = tmp.path;
    const auto resumed = run_experiment(full);
    CHECK(resumed.size() == 4);
    CHECK(read_records(tmp.path).size() == 4);  // file rewritten cleanly
}

TEST_CASE("failures become failed rows and the run continues") {
    ExperimentConfig cfg = small_config();
    cfg.node_sizes = {4, 16};
    cfg.graphs_per_size = 1;
    cfg.methods = {Method::Ising};
    cfg.noise.cnot_error = 0.01;  // 16-qubit density run exceeds the cap
    cfg.vqe.layers = 1;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 2);
    CHECK(!records[0].failed);
    CHECK(records[1].failed);
    CHECK(records[1].error.find("cap") != std::string::npos);
}

TEST_CASE("aggregate computes normal-approximation confidence intervals") {
    std::vector<ExperimentRecord> records;
    for (const double ratio : {0.8, 1.0}) {
        ExperimentRecord r;
        r.size = 8;
        r.method = Method::Ising;
        r.ratio = ratio;
        r.energy_ratio = 0.9;
        records.push_back(r);
    }
    const auto rows = aggregate(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 2);
    CHECK(rows[0].mean_ratio == doctest::Approx(0.9));
    CHECK(rows[0].ci95_ratio == doctest::Approx(0.196));  // 1.96 * SE with SE = 0.1
    CHECK(rows[0].ci95_energy_ratio == doctest::Approx(0.0));

    // identical ratios collapse the interval
    records[1].ratio = 0.8;
    CHECK(aggregate(records)[0].ci95_ratio == doctest::Approx(0.0));

    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
    records.pop_back();
    CHECK_THROWS_AS(aggregate(records), std::invalid_argument);  // group of one
}

TEST_CASE("noise impact comparison flags separated intervals") {
    SummaryRow base;
    base.size = 8;
    base.method = Method::Ising;
    base.mean_ratio = 0.95;
    base.ci95_ratio = 0.02;
    SummaryRow noisy = base;
    noisy.mean_ratio = 0.75;
    noisy.ci95_ratio = 0.03;

    const auto rows = compare_noise_impact({base}, {noisy});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].drop == doctest::Approx(0.2));
    CHECK(rows[0].significant);

    const auto same = compare_noise_impact({base}, {base});
    CHECK(same[0].drop == doctest::Approx(0.0));
    CHECK(!same[0].significant);

    SummaryRow other = base;
    other.size = 12;
    CHECK_THROWS_AS(compare_noise_impact({base}, {other}), std::invalid_argument);
    CHECK_THROWS_AS(compare_noise_impact({base}, {}), std::invalid_argument);
}

TEST_CASE("record json round trip") {
    const auto records = run_experiment(small_config());
    for (const auto& r : records) {
        const nlohmann::json j = r;
        const auto back = j.get<ExperimentRecord>();
        CHECK(nlohmann::json(back) == j);
    }
}

TEST_CASE("config json round trip with defaults") {
    const auto cfg = nlohmann::json::parse(R"({
        "node_sizes": [8, 12],
        "graphs_per_size": 3,
        "methods": ["ising", "qrac-magic"],
        "vqe": {"layers": 2, "exact": true},
        "noise": {"cnot_error": 0.01},
        "master_seed": 7
    })").get<ExperimentConfig>();
    CHECK(cfg.node_sizes == std::vector<int>{8, 12});
    CHECK(cfg.graphs_per_size == 3);
    CHECK(cfg.methods.size() == 2);
    CHECK(cfg.vqe.layers == 2);
    CHECK(cfg.vqe.sweeps == 2);  // default
    CHECK(cfg.vqe.exact);
    CHECK(cfg.noise.cnot_error == doctest::Approx(0.01));
    CHECK(cfg.magic_rounds == 1024);
    CHECK(cfg.master_seed == 7);

    const nlohmann::json j = cfg;
    CHECK(j.get<ExperimentConfig>().node_sizes == cfg.node_sizes);
}

TEST_CASE("summary csv has one row per group") {
    const auto records = run_experiment(small_config());
    const auto rows = aggregate(records);
    std::ostringstream csv;
    write_summary_csv(csv, rows);
    int lines = 0;
    for (const char c : csv.str()) lines += c == '\n';
    CHECK(lines == static_cast<int>(rows.size()) + 1);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = small_config();
    cfg.node_sizes.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.graphs_per_size = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.workers = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
