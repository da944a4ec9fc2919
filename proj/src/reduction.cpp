#include "hcs/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcs {

namespace {

long long block_size_for(int q, int ncoords, int nvertices) {
    long long cap = kMaxBlockGraphVertices / nvertices;
    long long size = 1;
    for (int i = 0; i < ncoords; ++i) {
        size *= q;
        if (size > cap) throw SizeLimitError("block graph exceeds the vertex cap");
    }
    return size;
}

GadgetKind gadget_for(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::almost3: return GadgetKind::almost3;
        case ReductionKind::col4: return GadgetKind::col4;
        case ReductionKind::col3: return GadgetKind::alpha;
    }
    throw InvalidParameterError("unknown reduction kind");
}

void check_edge_index(const BlockGraph& g, int edge_index) {
    require(edge_index >= 0 && edge_index < static_cast<int>(g.source.edges.size()),
            "edge index out of range");
}

void check_point(const BlockGraph& g, long long x) {
    require(x >= 0 && x < g.block_size, "point index out of range");
}

// Supported columns per row of the gadget (symbol rows for almost3, pair
// rows for the paired kinds); rows are never empty.
std::vector<std::vector<int>> support_rows(const MarkovOp& T) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(T.m));
    for (int s = 0; s < T.m; ++s)
        for (int t = 0; t < T.m; ++t)
            if (T.support[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] != 0)
                rows[static_cast<std::size_t>(s)].push_back(t);
    return rows;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

const char* reduction_kind_name(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::almost3: return "almost3";
        case ReductionKind::col4: return "col4";
        case ReductionKind::col3: return "col3";
    }
    throw InvalidParameterError("unknown reduction kind");
}

ReductionKind parse_reduction_kind(const std::string& name) {
    if (name == "almost3") return ReductionKind::almost3;
    if (name == "col4") return ReductionKind::col4;
    if (name == "col3") return ReductionKind::col3;
    throw InvalidParameterError("unknown reduction kind: " + name);
}

int palette_size(ReductionKind kind) {
    return kind == ReductionKind::col4 ? 4 : 3;
}

ConstraintFamily expected_family(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::almost3: return ConstraintFamily::one_to_one;
        case ReductionKind::col4: return ConstraintFamily::two_to_two;
        case ReductionKind::col3: return ConstraintFamily::alpha;
    }
    throw InvalidParameterError("unknown reduction kind");
}

BlockGraph reduce(ReductionKind kind, const LabelCoverInstance& G) {
    ConstraintFamily want = expected_family(kind);
    for (const Edge& e : G.edges)
        require(e.constraint.family == want,
                std::string(reduction_kind_name(kind)) + " consumes " +
                    constraint_family_name(want) + " constraints");
    if (kind != ReductionKind::almost3)
        require(G.R % 2 == 0, "paired reductions need an even label range");

    BlockGraph g;
    g.kind = kind;
    g.q = kind == ReductionKind::col4 ? 4 : 3;
    g.ncoords = G.R;
    g.block_size = block_size_for(g.q, g.ncoords, G.nvertices);
    g.source = G;
    g.gadget = gadget_operator(gadget_for(kind));
    return g;
}

long long vertex_count(const BlockGraph& g) {
    return g.block_size * g.source.nvertices;
}

long long vertex_id(const BlockGraph& g, int block, const std::vector<int>& x) {
    require(block >= 0 && block < g.source.nvertices, "block out of range");
    require(static_cast<int>(x.size()) == g.ncoords, "wrong number of coordinates");
    for (int d : x) require(d >= 0 && d < g.q, "coordinate symbol out of range");
    return block * g.block_size + static_cast<long long>(index_of_point(x, g.q));
}

int block_of_vertex(const BlockGraph& g, long long id) {
    require(id >= 0 && id < vertex_count(g), "vertex id out of range");
    return static_cast<int>(id / g.block_size);
}

std::vector<int> vertex_coords(const BlockGraph& g, long long id) {
    require(id >= 0 && id < vertex_count(g), "vertex id out of range");
    return point_of_index(static_cast<std::size_t>(id % g.block_size), g.q, g.ncoords);
}

bool adjacent_by(const BlockGraph& g, int edge_index, long long x, long long y) {
    check_edge_index(g, edge_index);
    check_point(g, x);
    check_point(g, y);
    const ConstraintKind& c = g.source.edges[static_cast<std::size_t>(edge_index)].constraint;
    auto xi = static_cast<std::size_t>(x);
    auto yi = static_cast<std::size_t>(y);
    if (g.kind == ReductionKind::almost3) {
        for (int i = 1; i <= g.ncoords; ++i) {
            int xd = digit_at(xi, g.q, g.ncoords, i);
            int yd = digit_at(yi, g.q, g.ncoords, c.perm[static_cast<std::size_t>(i - 1)]);
            if (!g.gadget.support[static_cast<std::size_t>(xd)][static_cast<std::size_t>(yd)])
                return false;
        }
        return true;
    }
    for (int i = 0; i < g.ncoords / 2; ++i) {
        int xs = digit_at(xi, g.q, g.ncoords, c.perm1[static_cast<std::size_t>(2 * i)]) * g.q +
                 digit_at(xi, g.q, g.ncoords, c.perm1[static_cast<std::size_t>(2 * i + 1)]);
        int ys = digit_at(yi, g.q, g.ncoords, c.perm2[static_cast<std::size_t>(2 * i)]) * g.q +
                 digit_at(yi, g.q, g.ncoords, c.perm2[static_cast<std::size_t>(2 * i + 1)]);
        if (!g.gadget.support[static_cast<std::size_t>(xs)][static_cast<std::size_t>(ys)])
            return false;
    }
    return true;
}

bool vertices_adjacent(const BlockGraph& g, long long a, long long b) {
    require(a >= 0 && a < vertex_count(g), "vertex id out of range");
    require(b >= 0 && b < vertex_count(g), "vertex id out of range");
    if (a == b) return false;
    int ba = static_cast<int>(a / g.block_size), bb = static_cast<int>(b / g.block_size);
    long long la = a % g.block_size, lb = b % g.block_size;
    for (int i = 0; i < static_cast<int>(g.source.edges.size()); ++i) {
        const Edge& e = g.source.edges[static_cast<std::size_t>(i)];
        if (e.u == ba && e.v == bb && adjacent_by(g, i, la, lb)) return true;
        if (e.u == bb && e.v == ba && adjacent_by(g, i, lb, la)) return true;
    }
    return false;
}

std::vector<std::pair<long long, long long>> edges_for(const BlockGraph& g, int edge_index) {
    check_edge_index(g, edge_index);
    const Edge& e = g.source.edges[static_cast<std::size_t>(edge_index)];
    const ConstraintKind& c = e.constraint;
    std::vector<std::vector<int>> rows = support_rows(g.gadget);
    bool paired = g.kind != ReductionKind::almost3;
    int slots = paired ? g.ncoords / 2 : g.ncoords;
    long long base_u = static_cast<long long>(e.u) * g.block_size;
    long long base_v = static_cast<long long>(e.v) * g.block_size;

    std::vector<std::pair<long long, long long>> out;
    std::vector<const std::vector<int>*> options(static_cast<std::size_t>(slots));
    std::vector<std::size_t> pick(static_cast<std::size_t>(slots));
    std::vector<int> ydigits(static_cast<std::size_t>(g.ncoords));
    for (long long x = 0; x < g.block_size; ++x) {
        std::vector<int> xd = point_of_index(static_cast<std::size_t>(x), g.q, g.ncoords);
        for (int i = 0; i < slots; ++i) {
            int row = paired ? xd[static_cast<std::size_t>(c.perm1[static_cast<std::size_t>(2 * i)] - 1)] * g.q +
                                   xd[static_cast<std::size_t>(c.perm1[static_cast<std::size_t>(2 * i + 1)] - 1)]
                             : xd[static_cast<std::size_t>(i)];
            options[static_cast<std::size_t>(i)] = &rows[static_cast<std::size_t>(row)];
        }
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            for (int i = 0; i < slots; ++i) {
                int sym = (*options[static_cast<std::size_t>(i)])[pick[static_cast<std::size_t>(i)]];
                if (paired) {
                    ydigits[static_cast<std::size_t>(c.perm2[static_cast<std::size_t>(2 * i)] - 1)] = sym / g.q;
                    ydigits[static_cast<std::size_t>(c.perm2[static_cast<std::size_t>(2 * i + 1)] - 1)] = sym % g.q;
                } else {
                    ydigits[static_cast<std::size_t>(c.perm[static_cast<std::size_t>(i)] - 1)] = sym;
                }
            }
            long long y = static_cast<long long>(index_of_point(ydigits, g.q));
            if (e.u != e.v || x != y) {
                long long a = base_u + x, b = base_v + y;
                out.emplace_back(std::min(a, b), std::max(a, b));
                if (static_cast<long long>(out.size()) > kMaxBlockGraphEdges)
                    throw SizeLimitError("edge enumeration exceeds the edge cap");
            }
            std::size_t s = static_cast<std::size_t>(slots);
            while (s > 0) {
                std::size_t i = s - 1;
                if (++pick[i] < options[i]->size()) break;
                pick[i] = 0;
                --s;
            }
            if (s == 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<long long, long long>> enumerate_edges(const BlockGraph& g) {
    std::vector<std::pair<long long, long long>> all;
    for (int i = 0; i < static_cast<int>(g.source.edges.size()); ++i) {
        std::vector<std::pair<long long, long long>> part = edges_for(g, i);
        if (static_cast<long long>(all.size() + part.size()) > kMaxBlockGraphEdges)
            throw SizeLimitError("edge enumeration exceeds the edge cap");
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

ColoringAssignment intended_coloring(const BlockGraph& g, const std::vector<int>& labels,
                                     std::vector<int> S) {
    const LabelCoverInstance& G = g.source;
    require(static_cast<int>(labels.size()) == G.nvertices,
            "labels must cover every label-cover vertex");
    if (S.empty()) {
        S.resize(static_cast<std::size_t>(G.nvertices));
        for (int v = 0; v < G.nvertices; ++v) S[static_cast<std::size_t>(v)] = v;
    } else {
        S = sorted_unique(std::move(S));
        require(S.front() >= 0 && S.back() < G.nvertices, "subset vertex out of range");
    }
    if (g.kind != ReductionKind::almost3)
        require(static_cast<int>(S.size()) == G.nvertices,
                "paired kinds color every block; only almost3 takes a subset");

    std::vector<char> member(static_cast<std::size_t>(G.nvertices), 0);
    for (int v : S) member[static_cast<std::size_t>(v)] = 1;
    for (int v : S)
        require(labels[static_cast<std::size_t>(v)] >= 1 && labels[static_cast<std::size_t>(v)] <= G.R,
                "label out of range");
    for (const Edge& e : G.edges)
        if (member[static_cast<std::size_t>(e.u)] && member[static_cast<std::size_t>(e.v)])
            require(constraint_holds(e.constraint, labels[static_cast<std::size_t>(e.u)],
                                     labels[static_cast<std::size_t>(e.v)]),
                    "labeling violates an induced constraint");

    ColoringAssignment c;
    c.Q = palette_size(g.kind);
    c.color.assign(static_cast<std::size_t>(vertex_count(g)), -1);
    for (int v : S) {
        int coord = labels[static_cast<std::size_t>(v)];
        long long base = static_cast<long long>(v) * g.block_size;
        for (long long x = 0; x < g.block_size; ++x)
            c.color[static_cast<std::size_t>(base + x)] =
                digit_at(static_cast<std::size_t>(x), g.q, g.ncoords, coord);
    }
    return c;
}

ColoringReport verify_coloring(const BlockGraph& g, const ColoringAssignment& c) {
    require(c.Q >= 1, "palette must be nonempty");
    require(static_cast<long long>(c.color.size()) == vertex_count(g),
            "coloring must cover every vertex");
    ColoringReport report;
    for (int col : c.color) {
        require(col >= -1 && col < c.Q, "color out of range");
        if (col < 0) ++report.uncolored;
    }
    for (auto [a, b] : enumerate_edges(g)) {
        ++report.edges;
        int ca = c.color[static_cast<std::size_t>(a)], cb = c.color[static_cast<std::size_t>(b)];
        if (ca >= 0 && ca == cb) ++report.monochromatic;
    }
    return report;
}

QFunction block_indicator(const BlockGraph& g, const std::vector<long long>& S, int block) {
    require(block >= 0 && block < g.source.nvertices, "block out of range");
    QFunction f = make_qfunction(g.q, g.ncoords);
    long long base = static_cast<long long>(block) * g.block_size;
    for (long long id : S) {
        require(id >= 0 && id < vertex_count(g), "vertex id out of range");
        if (id >= base && id < base + g.block_size)
            f.values(static_cast<Eigen::Index>(id - base)) = 1.0;
    }
    return f;
}

DecodeResult decode_tlabeling(const BlockGraph& g, const std::vector<long long>& S,
                              int k, double delta, double epsilon) {
    require(k >= 1, "degree bound must be at least 1");
    require(delta > 0.0, "influence threshold must be positive");
    require(epsilon > 0.0, "density threshold must be positive");

    std::vector<long long> ids = S;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!ids.empty())
        require(ids.front() >= 0 && ids.back() < vertex_count(g), "vertex id out of range");

    std::vector<char> member(static_cast<std::size_t>(vertex_count(g)), 0);
    for (long long id : ids) member[static_cast<std::size_t>(id)] = 1;
    for (auto [a, b] : enumerate_edges(g))
        require(!(member[static_cast<std::size_t>(a)] && member[static_cast<std::size_t>(b)]),
                "vertex set is not independent");

    int nblocks = g.source.nvertices;
    DecodeResult out;
    out.density.assign(static_cast<std::size_t>(nblocks), 0.0);
    for (long long id : ids) out.density[static_cast<std::size_t>(id / g.block_size)] += 1.0;
    for (double& d : out.density) d /= static_cast<double>(g.block_size);
    for (int v = 0; v < nblocks; ++v)
        if (out.density[static_cast<std::size_t>(v)] >= epsilon) out.J.push_back(v);

    int level = g.kind == ReductionKind::col4 ? 2 * k : k;
    double bound = g.kind == ReductionKind::col4 ? delta / 2.0 : delta;
    double ratio = static_cast<double>(level) / bound;
    out.t = ratio >= 9e18 ? std::numeric_limits<long long>::max()
                          : static_cast<long long>(std::floor(ratio + 1e-9));

    OrthonormalBasis basis = build_basis(g.q);
    out.labeling.assignment.assign(static_cast<std::size_t>(nblocks), {});
    out.labeling.t = static_cast<int>(std::clamp<long long>(out.t, 1, g.ncoords));
    std::vector<char> in_J(static_cast<std::size_t>(nblocks), 0);
    for (int v : out.J) {
        in_J[static_cast<std::size_t>(v)] = 1;
        QFunction f = block_indicator(g, ids, v);
        FourierTable table = transform(f, basis);
        std::vector<int> L;
        for (int i = 1; i <= g.ncoords; ++i)
            if (low_level_influence(table, i, level) >= bound) L.push_back(i);
        if (static_cast<long long>(L.size()) > out.t)
            throw ExperimentFailure("decoded label set exceeds its size bound");
        out.labeling.assignment[static_cast<std::size_t>(v)] = std::move(L);
    }

    for (int i = 0; i < static_cast<int>(g.source.edges.size()); ++i) {
        const Edge& e = g.source.edges[static_cast<std::size_t>(i)];
        if (!in_J[static_cast<std::size_t>(e.u)] || !in_J[static_cast<std::size_t>(e.v)]) continue;
        bool sat = edge_satisfied(e, out.labeling);
        out.checks.push_back({i, sat});
        if (sat) ++out.satisfied;
    }
    return out;
}

}  // namespace hcs
