#include "hcs/labelcover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "hcs/errors.hpp"

namespace hcs {
namespace {

void check_permutation(const std::vector<int>& perm, int R, const char* what) {
    require(static_cast<int>(perm.size()) == R,
            std::string(what) + ": permutation size must equal the label range");
    std::vector<char> seen(R, 0);
    for (int v : perm) {
        require(v >= 1 && v <= R && !seen[v - 1],
                std::string(what) + ": not a permutation of {1..R}");
        seen[v - 1] = 1;
    }
}

std::vector<int> inverse_of(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (int i = 0; i < static_cast<int>(perm.size()); ++i) inv[perm[i] - 1] = i + 1;
    return inv;
}

int block_of(int label) { return (label + 1) / 2; }  // {1,2}->1, {3,4}->2, ...

void check_label(int label, int R) {
    require(label >= 1 && label <= R, "label out of range");
}

// Uniformly random permutation of {1..R} with perm(a0) = b0.
std::vector<int> random_perm_fixing(std::mt19937_64& rng, int R, int a0, int b0) {
    std::vector<int> image;
    image.reserve(R - 1);
    for (int b = 1; b <= R; ++b)
        if (b != b0) image.push_back(b);
    std::shuffle(image.begin(), image.end(), rng);
    std::vector<int> perm(R);
    perm[a0 - 1] = b0;
    int next = 0;
    for (int a = 1; a <= R; ++a)
        if (a != a0) perm[a - 1] = image[next++];
    return perm;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

long long checked_pow(long long base, int exp, long long cap) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) {
        if (out > cap / base) return cap + 1;
        out *= base;
    }
    return out;
}

void check_relation_table(const Relation& rel, int R, int d) {
    std::vector<int> right_count(R / d, 0);
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto [a, b] = rel[i];
        require(a >= 1 && a <= R && b >= 1 && b <= R / d,
                "relation entry out of label range");
        require(i == 0 || rel[i - 1] < rel[i], "relation must be sorted and unique");
        ++right_count[b - 1];
    }
    for (int c : right_count)
        require(c == d, "each right label needs exactly d left partners");
}

void check_common(const BipartiteLC& lc) {
    require(lc.nx >= 1 && lc.ny >= 1, "vertex sets must be nonempty");
    require(lc.R >= 1 && lc.d >= 1 && lc.R % lc.d == 0,
            "label range must be a positive multiple of d");
    for (const Relation& rel : lc.pool) check_relation_table(rel, lc.R, lc.d);
    require(static_cast<int>(lc.rel.size()) == lc.nx, "relation grid shape");
    for (const auto& row : lc.rel) {
        require(static_cast<int>(row.size()) == lc.ny, "relation grid shape");
        for (int idx : row)
            require(idx >= 0 && idx < static_cast<int>(lc.pool.size()),
                    "relation index out of pool");
    }
}

void check_left_labels(const BipartiteLC& lc, const BipartiteLabeling& L) {
    require(static_cast<int>(L.lx.size()) == lc.nx &&
                static_cast<int>(L.ly.size()) == lc.ny,
            "labeling must cover both sides");
    for (int a : L.lx) check_label(a, lc.R);
    for (int b : L.ly) check_label(b, lc.R / lc.d);
}

}  // namespace

const char* constraint_family_name(ConstraintFamily family) {
    switch (family) {
        case ConstraintFamily::one_to_one: return "one-to-one";
        case ConstraintFamily::two_to_two: return "two-to-two";
        case ConstraintFamily::alpha: return "alpha";
        case ConstraintFamily::explicit_rel: return "explicit";
    }
    throw InvalidParameterError("unknown constraint family");
}

ConstraintFamily parse_constraint_family(const std::string& name) {
    if (name == "one-to-one") return ConstraintFamily::one_to_one;
    if (name == "two-to-two") return ConstraintFamily::two_to_two;
    if (name == "alpha") return ConstraintFamily::alpha;
    if (name == "explicit") return ConstraintFamily::explicit_rel;
    throw InvalidParameterError("unknown constraint family: " + name);
}

ConstraintKind one_to_one(std::vector<int> perm) {
    ConstraintKind c;
    c.family = ConstraintFamily::one_to_one;
    c.R = static_cast<int>(perm.size());
    require(c.R >= 1, "label range must be positive");
    check_permutation(perm, c.R, "one_to_one");
    c.inv = inverse_of(perm);
    c.perm = std::move(perm);
    return c;
}

static ConstraintKind paired_constraint(ConstraintFamily family,
                                        std::vector<int> perm1,
                                        std::vector<int> perm2) {
    ConstraintKind c;
    c.family = family;
    c.R = static_cast<int>(perm1.size());
    require(c.R >= 2 && c.R % 2 == 0, "label range must be even");
    check_permutation(perm1, c.R, constraint_family_name(family));
    check_permutation(perm2, c.R, constraint_family_name(family));
    c.inv1 = inverse_of(perm1);
    c.inv2 = inverse_of(perm2);
    c.perm1 = std::move(perm1);
    c.perm2 = std::move(perm2);
    return c;
}

ConstraintKind two_to_two(std::vector<int> perm1, std::vector<int> perm2) {
    return paired_constraint(ConstraintFamily::two_to_two, std::move(perm1),
                             std::move(perm2));
}

ConstraintKind alpha_constraint(std::vector<int> perm1, std::vector<int> perm2) {
    return paired_constraint(ConstraintFamily::alpha, std::move(perm1),
                             std::move(perm2));
}

ConstraintKind explicit_constraint(int R, std::vector<std::pair<int, int>> relation) {
    ConstraintKind c;
    c.family = ConstraintFamily::explicit_rel;
    require(R >= 1, "label range must be positive");
    c.R = R;
    std::sort(relation.begin(), relation.end());
    relation.erase(std::unique(relation.begin(), relation.end()), relation.end());
    for (auto [a, b] : relation) {
        check_label(a, R);
        check_label(b, R);
    }
    c.relation = std::move(relation);
    return c;
}

bool constraint_holds(const ConstraintKind& c, int a, int b) {
    check_label(a, c.R);
    check_label(b, c.R);
    switch (c.family) {
        case ConstraintFamily::one_to_one:
            return c.perm[a - 1] == b;
        case ConstraintFamily::two_to_two:
            return block_of(c.inv1[a - 1]) == block_of(c.inv2[b - 1]);
        case ConstraintFamily::alpha: {
            int ia = c.inv1[a - 1], ib = c.inv2[b - 1];
            return block_of(ia) == block_of(ib) && (ia % 2 == 1 || ib % 2 == 1);
        }
        case ConstraintFamily::explicit_rel:
            return std::binary_search(c.relation.begin(), c.relation.end(),
                                      std::make_pair(a, b));
    }
    throw InvalidParameterError("unknown constraint family");
}

ConstraintKind transpose(const ConstraintKind& c) {
    ConstraintKind out = c;
    switch (c.family) {
        case ConstraintFamily::one_to_one:
            std::swap(out.perm, out.inv);
            break;
        case ConstraintFamily::two_to_two:
        case ConstraintFamily::alpha:
            // The block relations are symmetric as sets of pairs, so swapping
            // the two permutations reverses the argument order.
            std::swap(out.perm1, out.perm2);
            std::swap(out.inv1, out.inv2);
            break;
        case ConstraintFamily::explicit_rel:
            for (auto& p : out.relation) std::swap(p.first, p.second);
            std::sort(out.relation.begin(), out.relation.end());
            break;
    }
    return out;
}

std::vector<std::pair<int, int>> relation_pairs(const ConstraintKind& c) {
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a <= c.R; ++a)
        for (int b = 1; b <= c.R; ++b)
            if (constraint_holds(c, a, b)) out.emplace_back(a, b);
    return out;
}

LabelCoverInstance make_instance(int nvertices, int R, std::vector<Edge> edges) {
    require(nvertices >= 1, "instance needs at least one vertex");
    require(R >= 1, "label range must be positive");
    for (Edge& e : edges) {
        require(e.u >= 0 && e.u < nvertices && e.v >= 0 && e.v < nvertices,
                "edge endpoint out of range");
        require(e.constraint.R == R, "constraint range must match the instance");
        if (e.u > e.v) {
            std::swap(e.u, e.v);
            e.constraint = transpose(e.constraint);
        }
    }
    LabelCoverInstance G;
    G.nvertices = nvertices;
    G.R = R;
    G.edges = std::move(edges);
    return G;
}

TLabeling singleton_labeling(std::vector<int> labels) {
    TLabeling L;
    L.t = 1;
    L.assignment.reserve(labels.size());
    for (int a : labels) L.assignment.push_back({a});
    return L;
}

static bool sets_satisfy(const ConstraintKind& c, const std::vector<int>& A,
                         const std::vector<int>& B) {
    for (int a : A)
        for (int b : B)
            if (constraint_holds(c, a, b)) return true;
    return false;
}

bool edge_satisfied(const Edge& e, const TLabeling& L) {
    return sets_satisfy(e.constraint, L.assignment.at(e.u), L.assignment.at(e.v));
}

Rat eval_sat(const LabelCoverInstance& G, const TLabeling& L) {
    require(static_cast<int>(L.assignment.size()) == G.nvertices,
            "labeling must cover every vertex");
    require(L.t >= 1, "label sets need positive capacity");
    for (const auto& set : L.assignment) {
        require(!set.empty(), "every vertex must carry a label");
        require(static_cast<int>(set.size()) <= L.t, "label set larger than t");
        for (int a : set) check_label(a, G.R);
    }
    if (G.edges.empty()) return Rat(1);
    long long hit = 0;
    for (const Edge& e : G.edges)
        if (edge_satisfied(e, L)) ++hit;
    return Rat(hit, static_cast<long long>(G.edges.size()));
}

namespace {

// Backtracking search for a t-labeling of `verts` satisfying every edge with
// both endpoints inside; candidate label sets are tried in catalog order.
bool label_subset(const LabelCoverInstance& G,
                  const std::vector<std::vector<int>>& catalog,
                  const std::vector<int>& verts, std::size_t pos,
                  std::vector<int>& pick) {
    if (pos == verts.size()) return true;
    int v = verts[pos];
    for (int option = 0; option < static_cast<int>(catalog.size()); ++option) {
        pick[pos] = option;
        bool ok = true;
        for (const Edge& e : G.edges) {
            if (e.u != v && e.v != v) continue;
            int pu = -1, pv = -1;
            for (std::size_t k = 0; k <= pos; ++k) {
                if (verts[k] == e.u) pu = pick[k];
                if (verts[k] == e.v) pv = pick[k];
            }
            if (pu < 0 || pv < 0) continue;
            if (!sets_satisfy(e.constraint, catalog[pu], catalog[pv])) {
                ok = false;
                break;
            }
        }
        if (ok && label_subset(G, catalog, verts, pos + 1, pick)) return true;
    }
    return false;
}

}  // namespace

IsatResult isat_t(const LabelCoverInstance& G, int t) {
    require(t >= 1, "t must be positive");
    if (G.nvertices > kMaxExhaustiveVertices)
        throw SizeLimitError("instance too large for exhaustive search");
    if (G.R > kMaxExhaustiveRange)
        throw SizeLimitError("label range too large for exhaustive search");

    std::vector<std::vector<int>> catalog;  // nonempty label sets of size <= t
    for (int mask = 1; mask < (1 << G.R); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) > t) continue;
        std::vector<int> set;
        for (int a = 1; a <= G.R; ++a)
            if (mask & (1 << (a - 1))) set.push_back(a);
        catalog.push_back(std::move(set));
    }

    std::vector<std::vector<int>> by_size(G.nvertices + 1);
    for (int mask = 1; mask < (1 << G.nvertices); ++mask)
        by_size[__builtin_popcount(static_cast<unsigned>(mask))].push_back(mask);

    for (int size = G.nvertices; size >= 1; --size) {
        for (int mask : by_size[size]) {
            std::vector<int> verts;
            for (int v = 0; v < G.nvertices; ++v)
                if (mask & (1 << v)) verts.push_back(v);
            std::vector<int> pick(verts.size(), -1);
            if (!label_subset(G, catalog, verts, 0, pick)) continue;
            IsatResult res;
            res.value = Rat(size, G.nvertices);
            res.subset = verts;
            res.witness.t = t;
            res.witness.assignment.assign(G.nvertices, {});
            for (std::size_t k = 0; k < verts.size(); ++k)
                res.witness.assignment[verts[k]] = catalog[pick[k]];
            return res;
        }
    }
    // Only reachable when every vertex carries an unsatisfiable self-loop:
    // the empty set is the best we can do.
    IsatResult res;
    res.value = Rat(0);
    res.witness.t = t;
    res.witness.assignment.assign(G.nvertices, {});
    return res;
}

PlantedInstance gen_planted(ConstraintFamily family, int nvertices, int nedges,
                            int R, std::uint64_t seed) {
    require(family != ConstraintFamily::explicit_rel,
            "planted generation needs a structured constraint family");
    require(nvertices >= 2, "planted instances need at least two vertices");
    require(nedges >= 1, "planted instances need at least one edge");
    require(R >= 1, "label range must be positive");
    if (family != ConstraintFamily::one_to_one)
        require(R >= 2 && R % 2 == 0, "label range must be even");

    std::mt19937_64 rng(seed);
    std::vector<int> hidden(nvertices);
    for (int& a : hidden) a = uniform_int(rng, 1, R);

    std::vector<Edge> edges;
    edges.reserve(nedges);
    for (int k = 0; k < nedges; ++k) {
        int u = uniform_int(rng, 0, nvertices - 1);
        int v = uniform_int(rng, 0, nvertices - 2);
        if (v >= u) ++v;
        int a0 = hidden[u], b0 = hidden[v];
        Edge e;
        e.u = u;
        e.v = v;
        if (family == ConstraintFamily::one_to_one) {
            e.constraint = one_to_one(random_perm_fixing(rng, R, a0, b0));
        } else {
            // Draw perm1 freely, then force inv2(b0) into a block position the
            // first coordinate's position can pair with.
            std::vector<int> perm1(R);
            std::iota(perm1.begin(), perm1.end(), 1);
            std::shuffle(perm1.begin(), perm1.end(), rng);
            int ia = inverse_of(perm1)[a0 - 1];
            int lo = 2 * block_of(ia) - 1;
            int j;
            if (family == ConstraintFamily::two_to_two)
                j = lo + uniform_int(rng, 0, 1);
            else
                j = (ia % 2 == 1) ? lo + uniform_int(rng, 0, 1) : lo;
            std::vector<int> perm2 = random_perm_fixing(rng, R, j, b0);
            e.constraint = (family == ConstraintFamily::two_to_two)
                               ? two_to_two(std::move(perm1), std::move(perm2))
                               : alpha_constraint(std::move(perm1), std::move(perm2));
        }
        edges.push_back(std::move(e));
    }

    PlantedInstance out;
    out.instance = make_instance(nvertices, R, std::move(edges));
    out.hidden = singleton_labeling(hidden);
    return out;
}

// ---------------------------------------------------------------------------

BipartiteLC make_weighted(int nx, int ny, int R, int d,
                          std::vector<Relation> pool,
                          std::vector<std::vector<int>> rel,
                          std::vector<std::vector<Rat>> w) {
    BipartiteLC lc;
    lc.nx = nx;
    lc.ny = ny;
    lc.R = R;
    lc.d = d;
    lc.weighted = true;
    lc.pool = std::move(pool);
    lc.rel = std::move(rel);
    lc.w = std::move(w);
    check_common(lc);
    require(static_cast<int>(lc.w.size()) == nx, "weight grid shape");
    for (const auto& row : lc.w) {
        require(static_cast<int>(row.size()) == ny, "weight grid shape");
        for (const Rat& v : row) require(v >= Rat(0), "weights must be nonnegative");
    }
    return lc;
}

BipartiteLC make_unweighted(int nx, int ny, int R, int d,
                            std::vector<Relation> pool,
                            std::vector<std::vector<int>> rel,
                            std::vector<std::pair<int, int>> edges) {
    BipartiteLC lc;
    lc.nx = nx;
    lc.ny = ny;
    lc.R = R;
    lc.d = d;
    lc.weighted = false;
    lc.pool = std::move(pool);
    lc.rel = std::move(rel);
    lc.edges = std::move(edges);
    check_common(lc);
    for (auto [x, y] : lc.edges)
        require(x >= 0 && x < nx && y >= 0 && y < ny, "edge endpoint out of range");
    return lc;
}

const Relation& relation_at(const BipartiteLC& lc, int x, int y) {
    return lc.pool.at(lc.rel.at(x).at(y));
}

bool relation_holds(const Relation& rel, int a, int b) {
    return std::binary_search(rel.begin(), rel.end(), std::make_pair(a, b));
}

Rat total_weight(const BipartiteLC& lc) {
    require(lc.weighted, "edge-multiset instances carry no weights");
    Rat sum(0);
    for (const auto& row : lc.w)
        for (const Rat& v : row) sum += v;
    return sum;
}

Rat row_weight(const BipartiteLC& lc, int x) {
    require(lc.weighted, "edge-multiset instances carry no weights");
    Rat sum(0);
    for (const Rat& v : lc.w.at(x)) sum += v;
    return sum;
}

Rat satisfied_weight(const BipartiteLC& lc, const BipartiteLabeling& L) {
    Rat sum(0);
    for (int x = 0; x < lc.nx; ++x) sum += satisfied_row_weight(lc, L, x);
    return sum;
}

Rat satisfied_row_weight(const BipartiteLC& lc, const BipartiteLabeling& L, int x) {
    require(lc.weighted, "edge-multiset instances carry no weights");
    check_left_labels(lc, L);
    Rat sum(0);
    for (int y = 0; y < lc.ny; ++y)
        if (relation_holds(relation_at(lc, x, y), L.lx[x], L.ly[y])) sum += lc.w[x][y];
    return sum;
}

long long satisfied_edges(const BipartiteLC& lc, const BipartiteLabeling& L) {
    auto rows = satisfied_row_edges(lc, L);
    return std::accumulate(rows.begin(), rows.end(), 0LL);
}

std::vector<long long> satisfied_row_edges(const BipartiteLC& lc,
                                           const BipartiteLabeling& L) {
    require(!lc.weighted, "weighted instances count by weight, not edges");
    check_left_labels(lc, L);
    std::vector<long long> rows(lc.nx, 0);
    for (auto [x, y] : lc.edges)
        if (relation_holds(relation_at(lc, x, y), L.lx[x], L.ly[y])) ++rows[x];
    return rows;
}

std::vector<long long> row_degrees(const BipartiteLC& lc) {
    require(!lc.weighted, "weighted instances have no edge multiset");
    std::vector<long long> deg(lc.nx, 0);
    for (auto [x, y] : lc.edges) {
        (void)y;
        ++deg[x];
    }
    return deg;
}

NormalizedLC transform_normalize(const BipartiteLC& lc, int ell) {
    require(lc.weighted, "normalization acts on weighted instances");
    require(ell >= 2, "duplication factor must be at least 2");
    require(total_weight(lc) == Rat(1), "total weight must be exactly 1");

    NormalizedLC out;
    long long new_nx = 0;
    std::vector<long long> copies(lc.nx, 0);
    for (int x = 0; x < lc.nx; ++x) {
        copies[x] =
            rat_floor(Rat(ell * static_cast<long long>(lc.nx)) * row_weight(lc, x));
        if (copies[x] == 0) out.skipped.push_back(x);
        new_nx += copies[x];
    }
    require(new_nx >= 1, "every left vertex fell below the copy threshold");
    if (new_nx * lc.ny > kMaxTransformConstraints)
        throw SizeLimitError("output exceeds size cap");

    std::vector<std::vector<int>> rel;
    std::vector<std::vector<Rat>> w;
    rel.reserve(new_nx);
    w.reserve(new_nx);
    for (int x = 0; x < lc.nx; ++x) {
        if (copies[x] == 0) continue;
        Rat wx = row_weight(lc, x);
        std::vector<Rat> row(lc.ny);
        for (int y = 0; y < lc.ny; ++y) row[y] = lc.w[x][y] / wx;
        for (long long c = 0; c < copies[x]; ++c) {
            rel.push_back(lc.rel[x]);
            w.push_back(row);
            out.origin.push_back(x);
        }
    }
    out.lc = make_weighted(static_cast<int>(new_nx), lc.ny, lc.R, lc.d, lc.pool,
                           std::move(rel), std::move(w));
    return out;
}

UnweightedLC transform_unweight(const BipartiteLC& lc, int ell) {
    require(lc.weighted, "unweighting acts on weighted instances");
    require(ell >= 1, "degree factor must be positive");
    for (int x = 0; x < lc.nx; ++x)
        require(row_weight(lc, x) == Rat(1), "every left row must have weight 1");

    long long alpha = static_cast<long long>(ell) * lc.ny;
    if (alpha * lc.nx > kMaxTransformConstraints)
        throw SizeLimitError("output exceeds size cap");

    UnweightedLC out;
    out.y0.resize(lc.nx, -1);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(alpha * lc.nx);
    for (int x = 0; x < lc.nx; ++x) {
        for (int y = 0; y < lc.ny; ++y)
            if (lc.w[x][y] > Rat(0)) {
                out.y0[x] = y;
                break;
            }
        require(out.y0[x] >= 0, "left vertex has no positive-weight neighbor");
        std::vector<long long> count(lc.ny, 0);
        long long used = 0;
        for (int y = 0; y < lc.ny; ++y) {
            if (y == out.y0[x]) continue;
            count[y] = rat_floor(Rat(alpha) * lc.w[x][y]);
            used += count[y];
        }
        count[out.y0[x]] = alpha - used;
        for (int y = 0; y < lc.ny; ++y)
            for (long long k = 0; k < count[y]; ++k) edges.emplace_back(x, y);
    }
    out.lc = make_unweighted(lc.nx, lc.ny, lc.R, lc.d, lc.pool, lc.rel,
                             std::move(edges));
    return out;
}

PoweredLC transform_power(const BipartiteLC& lc, int ell) {
    require(!lc.weighted, "powering acts on unweighted instances");
    require(ell >= 1, "sequence length must be positive");
    std::vector<std::vector<int>> nbrs(lc.nx);
    for (auto [x, y] : lc.edges) nbrs[x].push_back(y);
    long long alpha = nbrs.empty() ? 0 : static_cast<long long>(nbrs[0].size());
    require(alpha >= 1, "left vertices need at least one edge");
    for (auto& list : nbrs) {
        require(static_cast<long long>(list.size()) == alpha,
                "all left degrees must be equal");
        std::sort(list.begin(), list.end());
    }

    long long per_x = checked_pow(alpha, ell, kMaxTransformConstraints);
    if (per_x * lc.nx * ell > kMaxTransformConstraints)
        throw SizeLimitError("output exceeds size cap");
    long long new_nx = per_x * lc.nx;

    PoweredLC out;
    std::vector<std::vector<int>> rel;
    std::vector<std::pair<int, int>> edges;
    rel.reserve(new_nx);
    edges.reserve(new_nx * ell);
    for (int x = 0; x < lc.nx; ++x) {
        std::vector<int> choice(ell, 0);
        for (long long s = 0; s < per_x; ++s) {
            int id = static_cast<int>(rel.size());
            rel.push_back(lc.rel[x]);
            out.origin_x.push_back(x);
            out.origin_choice.push_back(choice);
            for (int j = 0; j < ell; ++j) edges.emplace_back(id, nbrs[x][choice[j]]);
            for (int j = ell - 1; j >= 0; --j) {  // odometer, last index fastest
                if (++choice[j] < alpha) break;
                choice[j] = 0;
            }
        }
    }
    out.lc = make_unweighted(static_cast<int>(new_nx), lc.ny, lc.R, lc.d, lc.pool,
                             std::move(rel), std::move(edges));
    return out;
}

CollapsedLC transform_collapse(const BipartiteLC& lc) {
    require(!lc.weighted, "collapsing acts on unweighted instances");
    int rd = lc.R / lc.d;
    for (const Relation& rel : lc.pool) {
        std::vector<int> left_count(lc.R, 0);
        for (auto [a, b] : rel) {
            (void)b;
            ++left_count[a - 1];
        }
        for (int c : left_count)
            require(c == 1,
                    "collapsing needs projection relations: every left label "
                    "must appear exactly once");
    }

    std::vector<std::vector<int>> at_y(lc.ny);
    for (int e = 0; e < static_cast<int>(lc.edges.size()); ++e)
        at_y[lc.edges[e].second].push_back(e);
    long long total = 0;
    for (const auto& list : at_y)
        total += static_cast<long long>(list.size()) * (list.size() - 1) / 2;
    if (total > kMaxTransformConstraints)
        throw SizeLimitError("output exceeds size cap");

    // Cache pairwise joins of pool relations.
    std::map<std::pair<int, int>, ConstraintKind> joined;
    auto join = [&](int r1, int r2) -> const ConstraintKind& {
        auto it = joined.find({r1, r2});
        if (it != joined.end()) return it->second;
        std::vector<std::pair<int, int>> pairs;
        for (int b = 1; b <= rd; ++b) {
            std::vector<int> A1, A2;
            for (auto [a, bb] : lc.pool[r1])
                if (bb == b) A1.push_back(a);
            for (auto [a, bb] : lc.pool[r2])
                if (bb == b) A2.push_back(a);
            for (int a1 : A1)
                for (int a2 : A2) pairs.emplace_back(a1, a2);
        }
        ConstraintKind c = explicit_constraint(lc.R, std::move(pairs));
        // Joining projections always yields a d-to-d relation; verify it.
        std::vector<int> left(lc.R, 0), right(lc.R, 0);
        for (auto [a1, a2] : c.relation) {
            ++left[a1 - 1];
            ++right[a2 - 1];
        }
        for (int k = 0; k < lc.R; ++k)
            require(left[k] == lc.d && right[k] == lc.d,
                    "joined relation is not d-to-d");
        return joined.emplace(std::make_pair(r1, r2), std::move(c)).first->second;
    };

    CollapsedLC out;
    std::vector<Edge> edges;
    edges.reserve(total);
    for (int y = 0; y < lc.ny; ++y) {
        const auto& list = at_y[y];
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                int x1 = lc.edges[list[i]].first;
                int x2 = lc.edges[list[j]].first;
                Edge e;
                e.u = x1;
                e.v = x2;
                e.constraint = join(lc.rel[x1][y], lc.rel[x2][y]);
                edges.push_back(std::move(e));
                out.origin.push_back({list[i], list[j], y});
            }
    }
    out.lc = make_instance(lc.nx, lc.R, std::move(edges));
    return out;
}

Rat disjoint_family_prob(const std::vector<std::vector<int>>& family, int ell) {
    require(!family.empty(), "family must be nonempty");
    require(ell >= 1, "draw count must be positive");
    long long n = static_cast<long long>(family.size());
    long long tuples = checked_pow(n, ell, kMaxTransformConstraints);
    if (tuples > kMaxTransformConstraints)
        throw SizeLimitError("enumeration exceeds size cap");
    for (const auto& set : family)
        for (std::size_t i = 0; i + 1 < set.size(); ++i)
            require(set[i] < set[i + 1], "sets must be sorted and unique");

    auto disjoint = [&](const std::vector<int>& A, const std::vector<int>& B) {
        for (int a : A)
            if (std::binary_search(B.begin(), B.end(), a)) return false;
        return true;
    };

    long long good = 0;
    std::vector<int> pick(ell, 0);
    for (long long s = 0; s < tuples; ++s) {
        bool ok = true;
        for (int i = 0; i < ell && ok; ++i)
            for (int j = i + 1; j < ell && ok; ++j)
                ok = disjoint(family[pick[i]], family[pick[j]]);
        if (ok) ++good;
        for (int j = ell - 1; j >= 0; --j) {
            if (++pick[j] < n) break;
            pick[j] = 0;
        }
    }
    Rat prob(good, tuples);

    // Internal consistency: with d the largest set size and gamma the largest
    // element frequency, the probability is at least 1 - ell^2 * d * gamma
    // whenever gamma < 1 / (ell^2 * d).
    std::size_t d = 0;
    std::map<int, long long> freq;
    for (const auto& set : family) {
        d = std::max(d, set.size());
        for (int a : set) ++freq[a];
    }
    if (d > 0) {
        Rat gamma(0);
        for (const auto& [a, cnt] : freq) {
            (void)a;
            gamma = std::max(gamma, Rat(cnt, n));
        }
        Rat factor(static_cast<long long>(ell) * ell * static_cast<long long>(d));
        if (gamma * factor < Rat(1))
            require(prob >= Rat(1) - factor * gamma, "disjointness bound violated");
    }
    return prob;
}

int popular_element(const std::vector<std::vector<int>>& family) {
    require(!family.empty(), "family must be nonempty");
    std::size_t max_set_size = 0;
    for (const auto& set : family)
        max_set_size = std::max(max_set_size, set.size());
    auto meet = [](const std::vector<int>& A, const std::vector<int>& B) {
        for (int a : A)
            if (std::find(B.begin(), B.end(), a) != B.end()) return true;
        return false;
    };
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            require(meet(family[i], family[j]), "family must be pairwise intersecting");

    int best = -1;
    long long best_count = 0;
    for (int a : family[0]) {
        long long count = 0;
        for (const auto& set : family)
            if (std::find(set.begin(), set.end(), a) != set.end()) ++count;
        if (count > best_count) {
            best_count = count;
            best = a;
        }
    }
    require(best >= 0, "first set is empty");
    // Every set meets the first one, so some element of it appears in at
    // least N / max_set_size sets.
    require(best_count * static_cast<long long>(max_set_size) >=
                static_cast<long long>(family.size()),
            "frequency bound violated");
    return best;
}

}  // namespace hcs
