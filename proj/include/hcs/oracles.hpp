#pragma once

#include <utility>
#include <vector>

#include "hcs/labelcover.hpp"
#include "hcs/rational.hpp"

namespace hcs {

// Ceiling on exhaustive labeling enumeration (assignments, not labelings per
// vertex).
inline constexpr long long kMaxLabelingAssignments = 1LL << 24;

// Limits for the exact searches; they are correctness anchors, not
// performance artifacts, so the defaults stay modest.
struct SearchBudget {
    int max_vertices = 5000;
    long long max_edges = 10000000;
    double time_limit_seconds = 60.0;
};

void validate(const SearchBudget& budget);

// Simple undirected graph: vertices 0..n-1, edges sorted unique with a < b.
// Self-loops are rejected (they would poison both searches).
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

Graph make_graph(long long nvertices, const std::vector<std::pair<long long, long long>>& edges);
std::vector<std::vector<int>> adjacency(const Graph& g);

struct ChromaticResult {
    bool exceeds = false;      // no proper coloring with at most qmax colors
    int chi = 0;               // smallest feasible color count; qmax+1 when exceeds
    std::vector<int> coloring; // witness, empty when exceeds
};

// Smallest q <= qmax admitting a proper coloring, by backtracking over
// vertices in descending-degree order with the first vertex pinned to color
// 0.  Budget overruns (vertices, edges, wall time) raise size-limit errors.
ChromaticResult chromatic_number(const Graph& g, int qmax, const SearchBudget& budget = {});

struct MisResult {
    int size = 0;
    std::vector<int> witness;  // ascending vertex ids, verified independent
};

// Exact maximum independent set by branch and bound: isolated and
// degree-one vertices are taken greedily (safe dominance), the branch vertex
// is the highest-degree one, and a greedy-matching bound prunes.  The
// returned witness is the first optimum in this deterministic order.
MisResult max_independent_set(const Graph& g, const SearchBudget& budget = {});

struct LabelingResult {
    Rat value;            // best satisfied fraction
    TLabeling witness;    // first assignment attaining it
};

// Exact maximum of the satisfied fraction over every assignment of nonempty
// label sets of size <= t.  The assignment count (sets per vertex to the
// power of the vertex count) must stay under kMaxLabelingAssignments.
LabelingResult best_labeling(const LabelCoverInstance& G, int t, const SearchBudget& budget = {});

}  // namespace hcs
