#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qrao {

// Bit configuration m, one {0,1} entry per graph node.
using BitAssignment = std::vector<std::uint8_t>;

// Undirected simple graph; edges are stored as (i, j) with i < j,
// sorted and deduplicated.
struct Graph {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges;

    int num_edges() const { return static_cast<int>(edges.size()); }

    // Validates endpoints, normalizes orientation/order, rejects
    // self-loops and duplicate edges.
    static Graph make(int num_nodes, std::vector<std::pair<int, int>> edges);
};

struct CutResult {
    long cut = 0;
    double ratio = 0.0;
};

// Scores an assignment against a known optimum.
CutResult evaluate_cut(const Graph& g, const BitAssignment& m, long optimal);

struct MaxCutSolution {
    BitAssignment assignment;
    long value = 0;
};

// Random d-regular simple graph via the pairing model, rejecting
// configurations with self-loops or multi-edges. Deterministic for a
// fixed seed. Requires n*d even and n > d.
Graph generate_random_regular(int num_nodes, int degree, std::uint64_t seed);

// cut(m) = (1/2) sum_{(i,j) in E} (1 - (-1)^(m_i + m_j)), i.e. the number
// of edges whose endpoint bits differ.
long cut_value(const Graph& g, const BitAssignment& m);

// Exhaustive maximum over 2^(n-1) configurations (bit 0 fixed to 0 by
// flip symmetry). Ties resolve to the lexicographically smallest
// maximizer. Guarded by a node cap.
MaxCutSolution max_cut_bruteforce(const Graph& g, int node_cap = 24);

double approximation_ratio(long cut, long optimal);

BitAssignment complement(const BitAssignment& m);

// Edge-list text format: first line "n m", then one "i j" pair per line,
// 0-indexed. The reader reports malformed input with line numbers.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace qrao
