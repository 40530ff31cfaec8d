#include "qrao/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qrao/rng.hpp"

namespace qrao {

Graph Graph::make(int num_nodes, std::vector<std::pair<int, int>> edges) {
    if (num_nodes <= 0) {
        throw std::invalid_argument("graph: num_nodes must be positive");
    }
    for (auto& [i, j] : edges) {
        if (i == j) {
            throw std::invalid_argument("graph: self-loop at node " + std::to_string(i));
        }
        if (i < 0 || j < 0 || i >= num_nodes || j >= num_nodes) {
            throw std::invalid_argument("graph: edge endpoint out of range");
        }
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw std::invalid_argument("graph: duplicate edge (" + std::to_string(dup->first) +
                                    ", " + std::to_string(dup->second) + ")");
    }
    Graph g;
    g.num_nodes = num_nodes;
    g.edges = std::move(edges);
    return g;
}

Graph generate_random_regular(int num_nodes, int degree, std::uint64_t seed) {
    if (degree < 1 || num_nodes <= degree) {
        throw std::invalid_argument("generate_random_regular: requires n > d >= 1");
    }
    if ((static_cast<long>(num_nodes) * degree) % 2 != 0) {
        throw std::invalid_argument("generate_random_regular: n*d must be even");
    }

    // Pairing model: n*d half-edge stubs, matched uniformly at random;
    // reject and retry whenever the matching induces a self-loop or a
    // multi-edge.
    const int stubs = num_nodes * degree;
    std::vector<int> stub_owner(stubs);
    for (int s = 0; s < stubs; ++s) stub_owner[s] = s / degree;

    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng = make_rng(derive_seed(seed, {0x9e67u, attempt}));
        std::vector<int> perm = stub_owner;
        // Fisher-Yates
        for (int s = stubs - 1; s > 0; --s) {
            const int k = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(s) + 1));
            std::swap(perm[s], perm[k]);
        }
        std::set<std::pair<int, int>> seen;
        bool ok = true;
        for (int s = 0; s < stubs && ok; s += 2) {
            int a = perm[s], b = perm[s + 1];
            if (a == b) {
                ok = false;
                break;
            }
            if (a > b) std::swap(a, b);
            ok = seen.insert({a, b}).second;
        }
        if (!ok) continue;
        return Graph::make(num_nodes, {seen.begin(), seen.end()});
    }
}

long cut_value(const Graph& g, const BitAssignment& m) {
    if (static_cast<int>(m.size()) != g.num_nodes) {
        throw std::invalid_argument("cut_value: assignment length != node count");
    }
    long cut = 0;
    for (const auto& [i, j] : g.edges) {
        cut += (m[i] != m[j]) ? 1 : 0;
    }
    return cut;
}

MaxCutSolution max_cut_bruteforce(const Graph& g, int node_cap) {
    if (g.num_nodes > node_cap) {
        throw std::invalid_argument("max_cut_bruteforce: " + std::to_string(g.num_nodes) +
                                    " nodes exceeds cap " + std::to_string(node_cap));
    }
    const int n = g.num_nodes;
    const std::uint64_t half = n > 1 ? (1ULL << (n - 1)) : 1;

    MaxCutSolution best;
    best.assignment.assign(n, 0);
    best.value = -1;
    BitAssignment m(n, 0);
    // Bit 0 fixed to 0; enumerating masks in increasing order makes the
    // first maximizer the lexicographically smallest one.
    for (std::uint64_t mask = 0; mask < half; ++mask) {
        for (int v = 1; v < n; ++v) m[v] = (mask >> (n - 1 - v)) & 1;
        const long c = cut_value(g, m);
        if (c > best.value) {
            best.value = c;
            best.assignment = m;
        }
    }
    return best;
}

CutResult evaluate_cut(const Graph& g, const BitAssignment& m, long optimal) {
    const long cut = cut_value(g, m);
    return {cut, approximation_ratio(cut, optimal)};
}

double approximation_ratio(long cut, long optimal) {
    if (optimal <= 0) {
        throw std::invalid_argument("approximation_ratio: optimal cut must be positive");
    }
    if (cut < 0 || cut > optimal) {
        throw std::invalid_argument("approximation_ratio: cut outside [0, optimal]");
    }
    return static_cast<double>(cut) / static_cast<double>(optimal);
}

BitAssignment complement(const BitAssignment& m) {
    BitAssignment out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] ? 0 : 1;
    return out;
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) {
        throw std::runtime_error("edge list: empty input");
    }
    std::istringstream header(line);
    int n = 0;
    long m = 0;
    if (!(header >> n >> m)) {
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": expected header 'n m'");
    }
    std::string extra;
    if (header >> extra) {
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": trailing tokens after header");
    }

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(std::max<long>(m, 0)));
    for (long e = 0; e < m; ++e) {
        if (!next_line()) {
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, found " + std::to_string(e));
        }
        std::istringstream row(line);
        int i = 0, j = 0;
        if (!(row >> i >> j)) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected two integers");
        }
        if (row >> extra) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": trailing tokens after edge");
        }
        edges.emplace_back(i, j);
    }
    if (next_line()) {
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": unexpected content after edge list");
    }
    try {
        return Graph::make(n, std::move(edges));
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(std::string("edge list: ") + err.what());
    }
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + path);
    }
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.num_nodes << ' ' << g.num_edges() << '\n';
    for (const auto& [i, j] : g.edges) out << i << ' ' << j << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    write_edge_list(out, g);
}

}  // namespace qrao
