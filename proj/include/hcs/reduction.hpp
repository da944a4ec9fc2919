#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hcs/labelcover.hpp"
#include "hcs/operators.hpp"
#include "hcs/qfunc.hpp"

namespace hcs {

// Every label-cover vertex becomes a block of q^ncoords vertices, so walks
// over the produced graph are capped: the vertex total and any materialized
// edge list must stay below these.
inline constexpr long long kMaxBlockGraphVertices = 1LL << 22;
inline constexpr long long kMaxBlockGraphEdges = 1LL << 21;

enum class ReductionKind { almost3, col4, col3 };

const char* reduction_kind_name(ReductionKind kind);
ReductionKind parse_reduction_kind(const std::string& name);

// Colors available in the produced coloring problem: 3, 4, 3.
int palette_size(ReductionKind kind);
// Constraint family each kind consumes: one-to-one, two-to-two, alpha.
ConstraintFamily expected_family(ReductionKind kind);

// Coloring instance built from a label-cover instance.  Vertices are the
// points of one q-ary cube per label-cover vertex; edges are implicit: each
// label-cover edge contributes the pairs admitted by the support of the
// gadget operator, coordinate by coordinate (almost3) or consecutive-pair by
// consecutive-pair (col4/col3).  Global vertex id = block * block_size +
// point index, with coordinate 1 the most significant digit.
struct BlockGraph {
    ReductionKind kind = ReductionKind::almost3;
    int q = 3;                 // symbols per coordinate
    int ncoords = 0;           // coordinates per block vertex
    long long block_size = 0;  // q^ncoords
    LabelCoverInstance source;
    MarkovOp gadget;           // symbol operator (almost3) or pair operator
};

// Fails with invalid-parameter when a constraint family does not match the
// kind (or the label range is odd for the paired kinds), and with size-limit
// when the vertex total would pass the cap.
BlockGraph reduce(ReductionKind kind, const LabelCoverInstance& G);

long long vertex_count(const BlockGraph& g);
long long vertex_id(const BlockGraph& g, int block, const std::vector<int>& x);
int block_of_vertex(const BlockGraph& g, long long id);
std::vector<int> vertex_coords(const BlockGraph& g, long long id);

// Adjacency rule of one label-cover edge, in its stored orientation: x is a
// point index in the block of e.u, y in the block of e.v.  almost3 couples
// coordinate i of x with coordinate perm(i) of y; the paired kinds read the
// x-coordinates at positions perm1(2i-1), perm1(2i) and the y-coordinates at
// perm2(2i-1), perm2(2i) as one symbol each of the pair operator.
bool adjacent_by(const BlockGraph& g, int edge_index, long long x, long long y);
// True when some label-cover edge wires the two global ids (either
// orientation for self-loop constraints); never true for a == b.
bool vertices_adjacent(const BlockGraph& g, long long a, long long b);

// The edges one label-cover edge contributes, as sorted unique global id
// pairs (a < b).  A self-loop constraint wires pairs inside a single block;
// pairs with x == y are dropped even when the rule admits them.
std::vector<std::pair<long long, long long>> edges_for(const BlockGraph& g, int edge_index);
// Union over all label-cover edges, sorted, duplicates collapsed.
std::vector<std::pair<long long, long long>> enumerate_edges(const BlockGraph& g);

struct ColoringAssignment {
    int Q = 3;               // palette size
    std::vector<int> color;  // one entry per vertex; -1 = uncolored
};

// Colors every point x of the block of v by its coordinate labels[v]
// (1-based); blocks outside S stay uncolored.  S defaults to every vertex
// and may be a proper subset only for almost3.  The labeling must satisfy
// every constraint whose endpoints both lie in S.
ColoringAssignment intended_coloring(const BlockGraph& g, const std::vector<int>& labels,
                                     std::vector<int> S = {});

struct ColoringReport {
    long long monochromatic = 0;  // edges whose endpoints share a color
    long long uncolored = 0;
    long long edges = 0;
};

// Exact counts by edge enumeration; an uncolored endpoint never counts as
// monochromatic.
ColoringReport verify_coloring(const BlockGraph& g, const ColoringAssignment& c);

// 0/1 indicator of the id set S restricted to one block, as a function on
// [q]^ncoords.
QFunction block_indicator(const BlockGraph& g, const std::vector<long long>& S, int block);

struct DecodedEdge {
    int edge = 0;  // index into source.edges; both endpoints lie in J
    bool satisfied = false;
};

struct DecodeResult {
    std::vector<int> J;           // blocks where S has density >= epsilon
    std::vector<double> density;  // |S within block| / block_size, all blocks
    TLabeling labeling;           // decoded label sets, empty off J
    long long t = 0;              // list-size bound enforced per block
    std::vector<DecodedEdge> checks;
    long long satisfied = 0;
};

// Reads an independent set S (global vertex ids, any order) back into label
// sets.  J keeps the blocks of S-density >= epsilon; a block in J receives
// every coordinate whose low-level influence on its S-indicator passes the
// threshold: level k with bound delta for almost3/col3, level 2k with bound
// delta/2 for col4.  The list-size bound t = floor(level/bound) (computed
// with 1e-9 slack against decimal parameters) then holds automatically and
// is still enforced.  The result records, per label-cover edge inside J,
// whether the decoded sets contain a satisfying pair.
DecodeResult decode_tlabeling(const BlockGraph& g, const std::vector<long long>& S,
                              int k, double delta, double epsilon);

}  // namespace hcs
