#include "hcs/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "hcs/errors.hpp"

namespace hcs {

namespace {

using Clock = std::chrono::steady_clock;

// Wall-clock guard shared by the searches; tick() samples the clock only
// every few hundred nodes to keep the hot loops cheap.
struct Deadline {
    Clock::time_point start = Clock::now();
    double limit = 0.0;
    long long ticks = 0;

    explicit Deadline(double seconds) : limit(seconds) {}

    void check() const {
        std::chrono::duration<double> elapsed = Clock::now() - start;
        if (elapsed.count() > limit)
            throw SizeLimitError("search exceeded its time budget");
    }

    void tick() {
        if (++ticks % 512 == 0) check();
    }
};

void check_graph_budget(const Graph& g, const SearchBudget& budget) {
    validate(budget);
    if (g.n > budget.max_vertices)
        throw SizeLimitError("graph exceeds the vertex budget");
    if (static_cast<long long>(g.edges.size()) > budget.max_edges)
        throw SizeLimitError("graph exceeds the edge budget");
}

bool proper_coloring(const Graph& g, const std::vector<int>& color, int q) {
    if (static_cast<int>(color.size()) != g.n) return false;
    for (int c : color)
        if (c < 0 || c >= q) return false;
    for (const auto& [a, b] : g.edges)
        if (color[a] == color[b]) return false;
    return true;
}

// Backtracking over positions in `earlier`-order; vertex p may only reuse a
// color already present or introduce the next fresh one, which pins the
// first vertex to color 0 and kills color-permutation symmetry.
bool color_search(int p, int used, int q, std::vector<int>& col,
                  const std::vector<std::vector<int>>& earlier, Deadline& dl) {
    if (p == static_cast<int>(col.size())) return true;
    dl.tick();
    const int top = std::min(q - 1, used);
    for (int c = 0; c <= top; ++c) {
        bool clash = false;
        for (int e : earlier[p])
            if (col[e] == c) {
                clash = true;
                break;
            }
        if (clash) continue;
        col[p] = c;
        if (color_search(p + 1, std::max(used, c + 1), q, col, earlier, dl)) return true;
        col[p] = -1;
    }
    return false;
}

struct MisState {
    std::vector<char> alive;
    std::vector<int> deg;
    int alive_count = 0;
};

void mis_kill(const std::vector<std::vector<int>>& adj, MisState& s, int v) {
    s.alive[v] = 0;
    --s.alive_count;
    for (int u : adj[v])
        if (s.alive[u]) --s.deg[u];
}

void mis_take(const std::vector<std::vector<int>>& adj, MisState& s,
              std::vector<int>& chosen, int v) {
    chosen.push_back(v);
    mis_kill(adj, s, v);
    for (int u : adj[v])
        if (s.alive[u]) mis_kill(adj, s, u);
}

// Safe dominance moves: isolated vertices always join; a degree-one vertex
// may join ahead of its neighbor without losing optimality.
void mis_reduce(const std::vector<std::vector<int>>& adj, MisState& s,
                std::vector<int>& chosen) {
    bool again = true;
    while (again && s.alive_count > 0) {
        again = false;
        for (int v = 0; v < static_cast<int>(s.alive.size()); ++v) {
            if (s.alive[v] && s.deg[v] <= 1) {
                mis_take(adj, s, chosen, v);
                again = true;
                break;
            }
        }
    }
}

// Greedy maximal matching among alive vertices; every matched edge rules one
// endpoint out of any independent set, giving the bound alive - matched.
int mis_matching(const std::vector<std::vector<int>>& adj, const MisState& s) {
    std::vector<char> matched(s.alive.size(), 0);
    int count = 0;
    for (int v = 0; v < static_cast<int>(s.alive.size()); ++v) {
        if (!s.alive[v] || matched[v]) continue;
        for (int u : adj[v]) {
            if (s.alive[u] && !matched[u] && u != v) {
                matched[v] = matched[u] = 1;
                ++count;
                break;
            }
        }
    }
    return count;
}

void mis_search(const std::vector<std::vector<int>>& adj, MisState s,
                std::vector<int> chosen, std::vector<int>& best, Deadline& dl) {
    dl.tick();
    mis_reduce(adj, s, chosen);
    if (s.alive_count == 0) {
        if (chosen.size() > best.size()) best = chosen;
        return;
    }
    const int bound = static_cast<int>(chosen.size()) + s.alive_count - mis_matching(adj, s);
    if (bound <= static_cast<int>(best.size())) return;

    int v = -1;
    for (int u = 0; u < static_cast<int>(s.alive.size()); ++u)
        if (s.alive[u] && (v < 0 || s.deg[u] > s.deg[v])) v = u;

    MisState with = s;
    std::vector<int> chosen_with = chosen;
    mis_take(adj, with, chosen_with, v);
    mis_search(adj, std::move(with), std::move(chosen_with), best, dl);

    mis_kill(adj, s, v);
    mis_search(adj, std::move(s), std::move(chosen), best, dl);
}

// All nonempty subsets of {1..R} of size at most t, ordered by size then
// lexicographically.
std::vector<std::vector<int>> label_sets(int R, int t) {
    std::vector<std::vector<int>> out;
    for (int s = 1; s <= std::min(t, R); ++s) {
        std::vector<int> comb(s);
        for (int i = 0; i < s; ++i) comb[i] = i + 1;
        while (true) {
            out.push_back(comb);
            int i = s - 1;
            while (i >= 0 && comb[i] == R - (s - 1 - i)) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace

void validate(const SearchBudget& budget) {
    require(budget.max_vertices > 0, "budget vertex limit must be positive");
    require(budget.max_edges > 0, "budget edge limit must be positive");
    require(std::isfinite(budget.time_limit_seconds) && budget.time_limit_seconds > 0,
            "budget time limit must be positive");
}

Graph make_graph(long long nvertices,
                 const std::vector<std::pair<long long, long long>>& edges) {
    require(nvertices >= 1, "graph needs at least one vertex");
    require(nvertices <= std::numeric_limits<int>::max(), "vertex count overflows int");
    Graph g;
    g.n = static_cast<int>(nvertices);
    g.edges.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        require(a >= 0 && a < nvertices && b >= 0 && b < nvertices,
                "edge endpoint out of range");
        require(a != b, "self-loops are not allowed");
        g.edges.emplace_back(static_cast<int>(std::min(a, b)),
                             static_cast<int>(std::max(a, b)));
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

std::vector<std::vector<int>> adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

ChromaticResult chromatic_number(const Graph& g, int qmax, const SearchBudget& budget) {
    Deadline dl(budget.time_limit_seconds);
    check_graph_budget(g, budget);
    require(qmax >= 1, "color budget must be positive");

    const auto adj = adjacency(g);
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return adj[a].size() > adj[b].size();
    });
    std::vector<int> pos(g.n);
    for (int p = 0; p < g.n; ++p) pos[order[p]] = p;
    std::vector<std::vector<int>> earlier(g.n);
    for (const auto& [a, b] : g.edges) {
        const int pa = pos[a], pb = pos[b];
        earlier[std::max(pa, pb)].push_back(std::min(pa, pb));
    }

    for (int q = 1; q <= qmax; ++q) {
        dl.check();
        std::vector<int> col(g.n, -1);
        if (!color_search(0, 0, q, col, earlier, dl)) continue;
        ChromaticResult out;
        out.chi = q;
        out.coloring.resize(g.n);
        for (int p = 0; p < g.n; ++p) out.coloring[order[p]] = col[p];
        if (!proper_coloring(g, out.coloring, q))
            throw ExperimentFailure("coloring witness failed revalidation");
        return out;
    }
    ChromaticResult out;
    out.exceeds = true;
    out.chi = qmax + 1;
    return out;
}

MisResult max_independent_set(const Graph& g, const SearchBudget& budget) {
    Deadline dl(budget.time_limit_seconds);
    check_graph_budget(g, budget);
    const auto adj = adjacency(g);

    MisState root;
    root.alive.assign(g.n, 1);
    root.deg.resize(g.n);
    for (int v = 0; v < g.n; ++v) root.deg[v] = static_cast<int>(adj[v].size());
    root.alive_count = g.n;

    dl.check();
    std::vector<int> best;
    mis_search(adj, std::move(root), {}, best, dl);
    std::sort(best.begin(), best.end());

    std::vector<char> in(g.n, 0);
    for (int v : best) in[v] = 1;
    for (const auto& [a, b] : g.edges)
        if (in[a] && in[b])
            throw ExperimentFailure("independent-set witness failed revalidation");

    MisResult out;
    out.size = static_cast<int>(best.size());
    out.witness = std::move(best);
    return out;
}

LabelingResult best_labeling(const LabelCoverInstance& G, int t, const SearchBudget& budget) {
    Deadline dl(budget.time_limit_seconds);
    validate(budget);
    require(t >= 1, "label budget must be positive");
    require(G.nvertices == 0 || G.R >= 1, "label range must be positive");
    if (G.nvertices > budget.max_vertices)
        throw SizeLimitError("instance exceeds the vertex budget");

    const auto catalog = label_sets(G.R, t);
    const long long ncat = static_cast<long long>(catalog.size());
    long long total = 1;
    for (int v = 0; v < G.nvertices; ++v) {
        if (total > kMaxLabelingAssignments / std::max<long long>(ncat, 1))
            throw SizeLimitError("labeling enumeration exceeds the assignment cap");
        total *= ncat;
    }

    dl.check();
    LabelingResult out;
    out.value = Rat(-1);
    std::vector<int> pick(G.nvertices, 0);
    TLabeling L;
    L.t = t;
    L.assignment.resize(G.nvertices);
    while (true) {
        dl.tick();
        for (int v = 0; v < G.nvertices; ++v) L.assignment[v] = catalog[pick[v]];
        const Rat value = eval_sat(G, L);
        if (value > out.value) {
            out.value = value;
            out.witness = L;
            if (out.value == Rat(1)) break;
        }
        int v = G.nvertices - 1;
        while (v >= 0 && pick[v] == ncat - 1) pick[v--] = 0;
        if (v < 0) break;
        ++pick[v];
    }
    if (eval_sat(G, out.witness) != out.value)
        throw ExperimentFailure("labeling witness failed revalidation");
    return out;
}

}  // namespace hcs
