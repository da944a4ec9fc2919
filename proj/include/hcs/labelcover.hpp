#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hcs/rational.hpp"

namespace hcs {

// Label-cover instances.  Vertex ids are 0-based; labels are 1-based, i.e.
// drawn from {1..R}.  Exhaustive evaluators are capped at
// kMaxExhaustiveVertices vertices and kMaxExhaustiveRange labels;
// transformations refuse outputs with more than kMaxTransformConstraints
// constraints.

inline constexpr int kMaxExhaustiveVertices = 10;
inline constexpr int kMaxExhaustiveRange = 8;
inline constexpr long long kMaxTransformConstraints = 1000000;

enum class ConstraintFamily { one_to_one, two_to_two, alpha, explicit_rel };

const char* constraint_family_name(ConstraintFamily family);
ConstraintFamily parse_constraint_family(const std::string& name);

// One edge constraint over {1..R} x {1..R}.  The permutation families keep
// their inverses so membership tests are O(1):
//   one_to_one:   holds(a,b) iff b == perm(a)
//   two_to_two:   holds(a,b) iff inv1(a) and inv2(b) lie in the same block
//                 {2i-1, 2i} (R must be even)
//   alpha:        as two_to_two but pairs with inv1(a), inv2(b) both even
//                 are excluded
//   explicit_rel: holds(a,b) iff (a,b) is listed
struct ConstraintKind {
    ConstraintFamily family = ConstraintFamily::one_to_one;
    int R = 0;
    std::vector<int> perm, inv;    // one_to_one
    std::vector<int> perm1, inv1;  // two_to_two / alpha
    std::vector<int> perm2, inv2;
    std::vector<std::pair<int, int>> relation;  // explicit_rel, sorted unique
};

ConstraintKind one_to_one(std::vector<int> perm);
ConstraintKind two_to_two(std::vector<int> perm1, std::vector<int> perm2);
ConstraintKind alpha_constraint(std::vector<int> perm1, std::vector<int> perm2);
ConstraintKind explicit_constraint(int R, std::vector<std::pair<int, int>> relation);

bool constraint_holds(const ConstraintKind& c, int a, int b);

// Same constraint with the argument order reversed:
// constraint_holds(transpose(c), b, a) == constraint_holds(c, a, b).
ConstraintKind transpose(const ConstraintKind& c);

// Lists every satisfying pair, in lexicographic order.
std::vector<std::pair<int, int>> relation_pairs(const ConstraintKind& c);

struct Edge {
    int u = 0, v = 0;
    ConstraintKind constraint;
};

// Edges are stored with u <= v; make_instance reorients (transposing the
// constraint) when handed an edge the other way.  Parallel edges and
// self-loops are kept as given.
struct LabelCoverInstance {
    int nvertices = 0;
    int R = 0;
    std::vector<Edge> edges;
};

LabelCoverInstance make_instance(int nvertices, int R, std::vector<Edge> edges);

// Assigns each vertex a set of at most t labels; an empty set means
// "unlabeled".  A constraint is satisfied when some pair drawn from the two
// endpoint sets satisfies it, so t = 1 recovers plain labelings.
struct TLabeling {
    int t = 1;
    std::vector<std::vector<int>> assignment;
};

TLabeling singleton_labeling(std::vector<int> labels);

bool edge_satisfied(const Edge& e, const TLabeling& L);

// Fraction of edges satisfied (counting multiplicity); 1 for edgeless
// instances.  Every vertex must carry at least one in-range label.
Rat eval_sat(const LabelCoverInstance& G, const TLabeling& L);

// Largest fraction |S|/|V| over vertex subsets S admitting a t-labeling of S
// that satisfies every edge with both endpoints in S, found by exhaustive
// search (subsets by decreasing size, backtracking over label sets).  Cost
// is exponential in both |V| and R, hence the size caps.
struct IsatResult {
    Rat value;
    std::vector<int> subset;  // witness vertices, ascending
    TLabeling witness;        // labels on the witness vertices, empty elsewhere
};

IsatResult isat_t(const LabelCoverInstance& G, int t);

// Random instance that is fully satisfiable by construction: a hidden
// labeling is sampled first, then each edge gets a uniformly random
// constraint of the requested family among those the hidden labels satisfy.
struct PlantedInstance {
    LabelCoverInstance instance;
    TLabeling hidden;
};

PlantedInstance gen_planted(ConstraintFamily family, int nvertices, int nedges,
                            int R, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Bipartite projection instances.  Left labels come from {1..R}, right labels
// from {1..R/d}; each pair (x, y) carries a relation in which every right
// label b has exactly d left partners.  Relations live in a shared pool so
// transformations can duplicate rows cheaply.

using Relation = std::vector<std::pair<int, int>>;  // sorted unique (a, b)

struct BipartiteLC {
    int nx = 0, ny = 0;
    int R = 0, d = 1;
    bool weighted = true;
    std::vector<Relation> pool;
    std::vector<std::vector<int>> rel;       // rel[x][y] -> pool index
    std::vector<std::vector<Rat>> w;         // weighted variant, nx * ny
    std::vector<std::pair<int, int>> edges;  // unweighted variant, multiset
};

BipartiteLC make_weighted(int nx, int ny, int R, int d,
                          std::vector<Relation> pool,
                          std::vector<std::vector<int>> rel,
                          std::vector<std::vector<Rat>> w);

BipartiteLC make_unweighted(int nx, int ny, int R, int d,
                            std::vector<Relation> pool,
                            std::vector<std::vector<int>> rel,
                            std::vector<std::pair<int, int>> edges);

const Relation& relation_at(const BipartiteLC& lc, int x, int y);
bool relation_holds(const Relation& rel, int a, int b);

Rat total_weight(const BipartiteLC& lc);
Rat row_weight(const BipartiteLC& lc, int x);

struct BipartiteLabeling {
    std::vector<int> lx;  // values in {1..R}
    std::vector<int> ly;  // values in {1..R/d}
};

// Weighted variant: weight of satisfied pairs, overall and per left vertex.
Rat satisfied_weight(const BipartiteLC& lc, const BipartiteLabeling& L);
Rat satisfied_row_weight(const BipartiteLC& lc, const BipartiteLabeling& L, int x);

// Unweighted variant: satisfied edge counts (with multiplicity).
long long satisfied_edges(const BipartiteLC& lc, const BipartiteLabeling& L);
std::vector<long long> satisfied_row_edges(const BipartiteLC& lc,
                                           const BipartiteLabeling& L);
std::vector<long long> row_degrees(const BipartiteLC& lc);

// Duplicates each left vertex x into floor(ell * nx * row_weight(x)) copies
// whose rows are rescaled to total weight 1.  Requires total weight exactly 1
// and ell >= 2.  Left vertices receiving zero copies are dropped and listed
// in `skipped`; `origin` maps each new left vertex to its source.
struct NormalizedLC {
    BipartiteLC lc;
    std::vector<int> origin;
    std::vector<int> skipped;
};

NormalizedLC transform_normalize(const BipartiteLC& lc, int ell);

// Converts a weighted instance with unit row weights into a left-regular
// edge multiset with all left degrees alpha = ell * ny: each y != y0(x) gets
// floor(alpha * w_xy) parallel edges and y0(x) -- the smallest y with
// positive weight -- absorbs the remainder.
struct UnweightedLC {
    BipartiteLC lc;
    std::vector<int> y0;
};

UnweightedLC transform_unweight(const BipartiteLC& lc, int ell);

// Replaces each left vertex of a left-regular unweighted instance by one
// vertex per length-ell sequence of its incident edges; the new vertex keeps
// exactly the ell chosen constraints, so all left degrees become ell.
// `origin_x` maps new vertices to their source and `origin_choice` records
// the chosen sequence as indices into the source's (y-sorted) edge list.
struct PoweredLC {
    BipartiteLC lc;
    std::vector<int> origin_x;
    std::vector<std::vector<int>> origin_choice;
};

PoweredLC transform_power(const BipartiteLC& lc, int ell);

// Joins every pair of distinct edges (x1,y), (x2,y) sharing a right vertex
// into one constraint on (x1,x2) relating left labels that agree on some
// right label:  { (a1,a2) : exists b with (a1,b) and (a2,b) related }.
// Right vertices disappear; each output relation is verified d-to-d, which
// requires every input relation to list each left label exactly once.
// `origin` records (edge index, edge index, y) per output constraint.
struct CollapsedLC {
    LabelCoverInstance lc;
    std::vector<std::array<int, 3>> origin;
};

CollapsedLC transform_collapse(const BipartiteLC& lc);

// Exact probability that ell sets drawn uniformly (with repetition) from the
// family are pairwise disjoint, by enumeration of all |family|^ell draws.
Rat disjoint_family_prob(const std::vector<std::vector<int>>& family, int ell);

// For a pairwise-intersecting family of N sets of size at most T, returns an
// element of the first set contained in at least N/T of the sets.
int popular_element(const std::vector<std::vector<int>>& family);

}  // namespace hcs
