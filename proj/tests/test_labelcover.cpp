#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "hcs/errors.hpp"
#include "hcs/labelcover.hpp"
#include "lc_oracle.hpp"

using namespace hcs;
using namespace oracle;

TEST_CASE("one-to-one constraints hold exactly on the permutation graph") {
    auto id = one_to_one(identity_perm(5));
    CHECK(constraint_holds(id, 3, 3));
    CHECK_FALSE(constraint_holds(id, 3, 4));

    auto cyc = one_to_one({2, 3, 1});
    CHECK(constraint_holds(cyc, 1, 2));
    CHECK(constraint_holds(cyc, 2, 3));
    CHECK(constraint_holds(cyc, 3, 1));
    CHECK_FALSE(constraint_holds(cyc, 1, 1));

    CHECK_THROWS_AS(constraint_holds(id, 0, 1), InvalidParameterError);
    CHECK_THROWS_AS(constraint_holds(id, 1, 6), InvalidParameterError);
    CHECK_THROWS_AS(one_to_one({1, 1, 3}), InvalidParameterError);
}

TEST_CASE("two-to-two constraints pair labels within blocks") {
    auto c = two_to_two(identity_perm(4), identity_perm(4));
    CHECK(constraint_holds(c, 1, 2));
    CHECK(constraint_holds(c, 1, 1));
    CHECK(constraint_holds(c, 2, 2));
    CHECK(constraint_holds(c, 3, 4));
    CHECK_FALSE(constraint_holds(c, 1, 3));
    CHECK_FALSE(constraint_holds(c, 2, 4));

    // perm1 sends positions {3,4} to labels {1,2}: label 1 now pairs with
    // whatever perm2 put at positions {3,4}.
    auto shifted = two_to_two({3, 4, 1, 2}, identity_perm(4));
    CHECK(constraint_holds(shifted, 1, 3));
    CHECK(constraint_holds(shifted, 1, 4));
    CHECK_FALSE(constraint_holds(shifted, 1, 1));

    CHECK_THROWS_AS(two_to_two({1, 2, 3}, {1, 2, 3}), InvalidParameterError);
}

TEST_CASE("alpha constraints drop the even-even position pairs") {
    auto a = alpha_constraint(identity_perm(4), identity_perm(4));
    CHECK_FALSE(constraint_holds(a, 2, 2));
    CHECK(constraint_holds(a, 2, 1));
    CHECK(constraint_holds(a, 1, 2));
    CHECK(constraint_holds(a, 1, 1));
    CHECK_FALSE(constraint_holds(a, 4, 4));
    CHECK(constraint_holds(a, 3, 4));
    CHECK_FALSE(constraint_holds(a, 2, 3));

    // Same permutations: the alpha relation is the block relation minus one
    // pair per block.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> p1 = identity_perm(6), p2 = identity_perm(6);
        std::shuffle(p1.begin(), p1.end(), rng);
        std::shuffle(p2.begin(), p2.end(), rng);
        auto blocky = two_to_two(p1, p2);
        auto notch = alpha_constraint(p1, p2);
        int nb = 0, na = 0;
        for (int x = 1; x <= 6; ++x)
            for (int y = 1; y <= 6; ++y) {
                if (constraint_holds(notch, x, y)) {
                    ++na;
                    CHECK(constraint_holds(blocky, x, y));
                }
                if (constraint_holds(blocky, x, y)) ++nb;
            }
        CHECK(nb == 12);  // 4 pairs per block
        CHECK(na == 9);   // 3 pairs per block
    }
}

TEST_CASE("transposing a constraint reverses the argument order") {
    std::mt19937_64 rng(99);
    std::vector<ConstraintKind> cases;
    std::vector<int> p = identity_perm(4);
    std::shuffle(p.begin(), p.end(), rng);
    cases.push_back(one_to_one(p));
    std::vector<int> p1 = identity_perm(4), p2 = identity_perm(4);
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    cases.push_back(two_to_two(p1, p2));
    cases.push_back(alpha_constraint(p1, p2));
    cases.push_back(explicit_constraint(4, {{1, 2}, {2, 2}, {3, 4}, {4, 1}}));

    for (const auto& c : cases) {
        auto ct = transpose(c);
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b)
                CHECK(constraint_holds(c, a, b) == constraint_holds(ct, b, a));
    }

    auto pairs = relation_pairs(one_to_one({2, 3, 1}));
    CHECK(pairs == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}});
}

TEST_CASE("satisfaction fractions count edges with multiplicity") {
    auto id6 = one_to_one(identity_perm(6));
    auto single = make_instance(2, 6, {{0, 1, id6}});
    CHECK(eval_sat(single, singleton_labeling({5, 5})) == Rat(1));
    CHECK(eval_sat(single, singleton_labeling({5, 6})) == Rat(0));

    // Triangle whose third edge cannot agree with the first two.
    auto id3 = one_to_one(identity_perm(3));
    auto rot = one_to_one({2, 3, 1});
    auto tri = make_instance(3, 3, {{0, 1, id3}, {1, 2, id3}, {0, 2, rot}});
    CHECK(eval_sat(tri, singleton_labeling({1, 1, 1})) == Rat(2, 3));

    // Parallel edges with opposite verdicts average to 1/2.
    auto both = make_instance(2, 3, {{0, 1, id3}, {0, 1, rot}});
    CHECK(eval_sat(both, singleton_labeling({2, 2})) == Rat(1, 2));

    TLabeling missing = singleton_labeling({1, 1, 1});
    missing.assignment[1].clear();
    CHECK_THROWS_AS(eval_sat(tri, missing), InvalidParameterError);
    CHECK_THROWS_AS(eval_sat(tri, singleton_labeling({1, 1, 4})), InvalidParameterError);

    // Edges handed in high-to-low order are stored reversed with the
    // transposed constraint.
    auto flipped = make_instance(3, 3, {{2, 0, rot}});
    CHECK(flipped.edges[0].u == 0);
    CHECK(flipped.edges[0].v == 2);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            TLabeling L = singleton_labeling({b, 1, a});
            CHECK((eval_sat(flipped, L) == Rat(1)) == constraint_holds(rot, a, b));
        }
}

TEST_CASE("label sets satisfy a constraint existentially") {
    auto id3 = one_to_one(identity_perm(3));
    auto G = make_instance(2, 3, {{0, 1, id3}});
    TLabeling L;
    L.t = 2;
    L.assignment = {{1, 2}, {2, 3}};
    CHECK(eval_sat(G, L) == Rat(1));  // label 2 on both sides

    L.assignment = {{1, 2}, {3}};
    CHECK(eval_sat(G, L) == Rat(0));

    L.assignment = {{1, 2, 3}, {3}};
    CHECK_THROWS_AS(eval_sat(G, L), InvalidParameterError);  // set larger than t
}

TEST_CASE("induced satisfiability finds the largest consistent subset") {
    // Cycle whose permutations compose to a derangement: all three vertices
    // cannot be labeled, any two can.
    auto id2 = one_to_one(identity_perm(2));
    auto swap2 = one_to_one({2, 1});
    auto G = make_instance(3, 2, {{0, 1, id2}, {1, 2, id2}, {0, 2, swap2}});

    auto r1 = isat_t(G, 1);
    CHECK(r1.value == Rat(2, 3));
    CHECK(r1.subset.size() == 2);
    for (const Edge& e : G.edges) {
        bool inside = std::count(r1.subset.begin(), r1.subset.end(), e.u) &&
                      std::count(r1.subset.begin(), r1.subset.end(), e.v);
        if (inside) CHECK(edge_satisfied(e, r1.witness));
    }

    // With sets of size two every constraint admits a common pair.
    auto r2 = isat_t(G, 2);
    CHECK(r2.value == Rat(1));

    // A fully satisfiable instance is recognized at t = 1.
    auto planted = gen_planted(ConstraintFamily::one_to_one, 5, 8, 4, 20250301);
    CHECK(isat_t(planted.instance, 1).value == Rat(1));

    // An empty relation kills every pair but leaves singletons alone.
    auto blocker = explicit_constraint(2, {});
    auto H = make_instance(2, 2, {{0, 1, blocker}});
    CHECK(isat_t(H, 1).value == Rat(1, 2));

    // An unsatisfiable self-loop cannot even keep its own vertex.
    auto loop = make_instance(1, 2, {{0, 0, swap2}});
    auto r0 = isat_t(loop, 1);
    CHECK(r0.value == Rat(0));
    CHECK(r0.subset.empty());

    CHECK_THROWS_AS(isat_t(make_instance(11, 2, {}), 1), SizeLimitError);
    CHECK_THROWS_AS(isat_t(make_instance(2, 9, {}), 1), SizeLimitError);
}

TEST_CASE("planted instances are satisfied by their hidden labeling") {
    struct Case {
        ConstraintFamily family;
        int R;
    };
    for (Case cs : {Case{ConstraintFamily::one_to_one, 5},
                    Case{ConstraintFamily::two_to_two, 4},
                    Case{ConstraintFamily::alpha, 4}}) {
        for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
            auto out = gen_planted(cs.family, 6, 12, cs.R, seed);
            CHECK(eval_sat(out.instance, out.hidden) == Rat(1));
            for (const Edge& e : out.instance.edges)
                CHECK(e.constraint.family == cs.family);
        }
    }

    // Alpha edges never relate two even positions.
    auto out = gen_planted(ConstraintFamily::alpha, 5, 20, 6, 424242);
    for (const Edge& e : out.instance.edges)
        for (auto [a, b] : relation_pairs(e.constraint)) {
            int ia = e.constraint.inv1[a - 1], ib = e.constraint.inv2[b - 1];
            CHECK((ia + 1) / 2 == (ib + 1) / 2);
            CHECK((ia % 2 == 1 || ib % 2 == 1));
        }

    // Same seed, same instance.
    auto g1 = gen_planted(ConstraintFamily::two_to_two, 5, 10, 4, 314);
    auto g2 = gen_planted(ConstraintFamily::two_to_two, 5, 10, 4, 314);
    CHECK(g1.hidden.assignment == g2.hidden.assignment);
    REQUIRE(g1.instance.edges.size() == g2.instance.edges.size());
    for (std::size_t i = 0; i < g1.instance.edges.size(); ++i) {
        CHECK(g1.instance.edges[i].u == g2.instance.edges[i].u);
        CHECK(g1.instance.edges[i].v == g2.instance.edges[i].v);
        CHECK(g1.instance.edges[i].constraint.perm1 ==
              g2.instance.edges[i].constraint.perm1);
        CHECK(g1.instance.edges[i].constraint.perm2 ==
              g2.instance.edges[i].constraint.perm2);
    }

    CHECK_THROWS_AS(gen_planted(ConstraintFamily::explicit_rel, 4, 4, 4, 1),
                    InvalidParameterError);
    CHECK_THROWS_AS(gen_planted(ConstraintFamily::alpha, 4, 4, 5, 1),
                    InvalidParameterError);
    CHECK_THROWS_AS(gen_planted(ConstraintFamily::one_to_one, 1, 4, 4, 1),
                    InvalidParameterError);
}

TEST_CASE("bipartite construction enforces the projection property") {
    Relation good = {{1, 1}, {2, 1}, {3, 2}, {4, 2}};
    auto lc = make_weighted(1, 1, 4, 2, {good}, {{0}}, {{Rat(1)}});
    CHECK(relation_holds(relation_at(lc, 0, 0), 2, 1));
    CHECK_FALSE(relation_holds(relation_at(lc, 0, 0), 2, 2));

    Relation lopsided = {{1, 1}, {2, 1}, {3, 1}, {4, 2}};
    CHECK_THROWS_AS(make_weighted(1, 1, 4, 2, {lopsided}, {{0}}, {{Rat(1)}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_weighted(1, 1, 3, 2, {good}, {{0}}, {{Rat(1)}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_weighted(1, 1, 4, 2, {good}, {{0}}, {{Rat(-1)}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_weighted(2, 1, 4, 2, {good}, {{0}}, {{Rat(1)}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(
        make_unweighted(1, 1, 4, 2, {good}, {{0}}, {{0, 1}}),
        InvalidParameterError);
}

TEST_CASE("normalization yields unit row weights") {
    std::mt19937_64 rng(7);

    // Uniform two-vertex instance: three exact copies of each row.
    {
        std::vector<Relation> pool = {{{1, 1}, {2, 2}}};
        std::vector<std::vector<int>> rel = {{0, 0}, {0, 0}};
        std::vector<std::vector<Rat>> w = {{Rat(1, 4), Rat(1, 4)},
                                           {Rat(1, 4), Rat(1, 4)}};
        auto lc = make_weighted(2, 2, 2, 1, pool, rel, w);
        auto norm = transform_normalize(lc, 3);
        CHECK(norm.lc.nx == 6);
        CHECK(norm.origin == std::vector<int>{0, 0, 0, 1, 1, 1});
        CHECK(norm.skipped.empty());
        for (int x = 0; x < norm.lc.nx; ++x) CHECK(row_weight(norm.lc, x) == Rat(1));
        CHECK(total_weight(norm.lc) == Rat(6));
    }

    // A weightless left vertex is dropped and reported.
    {
        std::vector<Relation> pool = {{{1, 1}, {2, 2}}};
        std::vector<std::vector<int>> rel = {{0}, {0}, {0}};
        std::vector<std::vector<Rat>> w = {{Rat(1, 2)}, {Rat(1, 2)}, {Rat(0)}};
        auto lc = make_weighted(3, 1, 2, 1, pool, rel, w);
        auto norm = transform_normalize(lc, 3);
        CHECK(norm.skipped == std::vector<int>{2});
        CHECK(norm.lc.nx == 8);  // floor(9/2) copies of each surviving vertex
        for (int x : norm.origin) CHECK(x != 2);
    }

    // Output size always lands in [(ell-1)|X|, ell|X|].
    for (int trial = 0; trial < 6; ++trial) {
        auto bip = make_weighted_bip(rng, 3, 2, 4, 2, false, false);
        for (int ell : {2, 3}) {
            auto norm = transform_normalize(bip.lc, ell);
            CHECK(norm.lc.nx >= (ell - 1) * bip.lc.nx);
            CHECK(norm.lc.nx <= ell * bip.lc.nx);
            for (int x = 0; x < norm.lc.nx; ++x)
                CHECK(row_weight(norm.lc, x) == Rat(1));
        }
    }

    // A planted instance stays perfectly satisfiable under the copied labels.
    {
        auto bip = make_weighted_bip(rng, 3, 3, 4, 2, true, false);
        auto norm = transform_normalize(bip.lc, 2);
        BipartiteLabeling L;
        L.ly = bip.hidden.ly;
        for (int x : norm.origin) L.lx.push_back(bip.hidden.lx[x]);
        CHECK(satisfied_weight(norm.lc, L) == total_weight(norm.lc));
    }

    auto bad = make_weighted_bip(rng, 2, 2, 2, 1, false, true);  // rows sum to 1
    CHECK_THROWS_AS(transform_normalize(bad.lc, 2), InvalidParameterError);
    auto ok = make_weighted_bip(rng, 2, 2, 2, 1, false, false);
    CHECK_THROWS_AS(transform_normalize(ok.lc, 1), InvalidParameterError);
}

TEST_CASE("unweighting makes the left side regular") {
    std::mt19937_64 rng(11);

    // Single pair of weight one: the remainder rule yields parallel edges.
    {
        std::vector<Relation> pool = {{{1, 1}, {2, 2}}};
        auto lc = make_weighted(1, 1, 2, 1, pool, {{0}}, {{Rat(1)}});
        auto uw = transform_unweight(lc, 2);
        CHECK(uw.lc.edges == std::vector<std::pair<int, int>>{{0, 0}, {0, 0}});
        CHECK(uw.y0 == std::vector<int>{0});
    }

    for (int trial = 0; trial < 6; ++trial) {
        auto bip = make_weighted_bip(rng, 3, 3, 4, 2, trial % 2 == 0, true);
        for (int ell : {1, 2, 3}) {
            auto uw = transform_unweight(bip.lc, ell);
            for (long long deg : row_degrees(uw.lc))
                CHECK(deg == static_cast<long long>(ell) * bip.lc.ny);
            // Edge counts stay within one |Y| of the weight proportions.
            auto ecount = edge_counts(uw.lc);
            long long alpha = static_cast<long long>(ell) * bip.lc.ny;
            for (int x = 0; x < bip.lc.nx; ++x)
                for (int y = 0; y < bip.lc.ny; ++y) {
                    Rat scaled = Rat(alpha) * bip.lc.w[x][y];
                    if (y != uw.y0[x]) {
                        CHECK(Rat(ecount[x][y]) <= scaled);
                        CHECK(Rat(ecount[x][y]) > scaled - Rat(1));
                    } else {
                        CHECK(Rat(ecount[x][y]) <= scaled + Rat(bip.lc.ny));
                    }
                }
        }
    }

    // Perfect satisfiability survives.
    {
        auto bip = make_weighted_bip(rng, 3, 2, 4, 2, true, true);
        auto uw = transform_unweight(bip.lc, 2);
        CHECK(satisfied_edges(uw.lc, bip.hidden) ==
              static_cast<long long>(uw.lc.edges.size()));
    }

    // Per-vertex satisfaction fractions never drop more than 1/ell below the
    // weighted value, for any labeling.
    for (int trial = 0; trial < 4; ++trial) {
        auto bip = make_weighted_bip(rng, 2, 2, 4, 2, false, true);
        int ell = 2 + trial % 2;
        auto uw = transform_unweight(bip.lc, ell);
        auto ecount = edge_counts(uw.lc);
        long long alpha = static_cast<long long>(ell) * bip.lc.ny;
        for_each_ly(bip.lc.ny, bip.lc.R / bip.lc.d, [&](const std::vector<int>& ly) {
            for (int x = 0; x < bip.lc.nx; ++x)
                for (int a = 1; a <= bip.lc.R; ++a) {
                    Rat frac(row_count(uw.lc, ecount, x, a, ly), alpha);
                    CHECK(frac <= row_value(bip.lc, x, a, ly) + Rat(1, ell));
                }
        });
    }

    auto bad = make_weighted_bip(rng, 2, 2, 2, 1, false, false);  // total is 1
    CHECK_THROWS_AS(transform_unweight(bad.lc, 2), InvalidParameterError);
}

TEST_CASE("powering replaces degrees by sequences") {
    std::mt19937_64 rng(13);

    {
        auto bip = make_regular_bip(rng, 1, 2, 2, 1, false);
        auto pw = transform_power(bip.lc, 2);
        CHECK(pw.lc.nx == 4);
        CHECK(pw.origin_x == std::vector<int>{0, 0, 0, 0});
        REQUIRE(pw.origin_choice.size() == 4);
        CHECK(pw.origin_choice[0] == std::vector<int>{0, 0});
        CHECK(pw.origin_choice[1] == std::vector<int>{0, 1});
        CHECK(pw.origin_choice[2] == std::vector<int>{1, 0});
        CHECK(pw.origin_choice[3] == std::vector<int>{1, 1});
        for (long long deg : row_degrees(pw.lc)) CHECK(deg == 2);
        // Vertex for sequence (0,1) connects to y=0 and y=1.
        auto ecount = edge_counts(pw.lc);
        CHECK(ecount[1][0] == 1);
        CHECK(ecount[1][1] == 1);
        CHECK(ecount[0][0] == 2);
    }

    // Parallel input edges are legal sequence targets.
    {
        std::vector<Relation> pool = {{{1, 1}, {2, 2}}};
        auto lc = make_unweighted(1, 1, 2, 1, pool, {{0}}, {{0, 0}, {0, 0}});
        auto pw = transform_power(lc, 2);
        CHECK(pw.lc.nx == 4);
        for (long long deg : row_degrees(pw.lc)) CHECK(deg == 2);
    }

    // Perfect satisfiability survives under the origin labeling.
    {
        auto bip = make_regular_bip(rng, 2, 3, 4, 2, true);
        auto pw = transform_power(bip.lc, 2);
        BipartiteLabeling L;
        L.ly = bip.hidden.ly;
        for (int x : pw.origin_x) L.lx.push_back(bip.hidden.lx[x]);
        CHECK(satisfied_edges(pw.lc, L) == static_cast<long long>(pw.lc.edges.size()));
    }

    // Irregular input is rejected.
    {
        std::vector<Relation> pool = {{{1, 1}, {2, 2}}};
        auto lc = make_unweighted(2, 1, 2, 1, pool, {{0}, {0}}, {{0, 0}, {0, 0}, {1, 0}});
        CHECK_THROWS_AS(transform_power(lc, 2), InvalidParameterError);
    }

    // Size cap: 100^3 sequences is over the constraint budget.
    {
        int ny = 100;
        std::vector<Relation> pool = {{{1, 1}, {2, 2}}};
        std::vector<std::vector<int>> rel = {std::vector<int>(ny, 0)};
        std::vector<std::pair<int, int>> edges;
        for (int y = 0; y < ny; ++y) edges.emplace_back(0, y);
        auto lc = make_unweighted(1, ny, 2, 1, pool, rel, edges);
        CHECK_THROWS_AS(transform_power(lc, 3), SizeLimitError);
    }
}

TEST_CASE("collapsing joins edges through shared right vertices") {
    std::mt19937_64 rng(17);

    // Two identity projections meeting at one right vertex give equality.
    {
        Relation ident = {{1, 1}, {2, 2}};
        auto lc = make_unweighted(2, 1, 2, 1, {ident}, {{0}, {0}}, {{0, 0}, {1, 0}});
        auto col = transform_collapse(lc);
        REQUIRE(col.lc.edges.size() == 1);
        const Edge& e = col.lc.edges[0];
        CHECK(e.u == 0);
        CHECK(e.v == 1);
        CHECK(relation_pairs(e.constraint) ==
              std::vector<std::pair<int, int>>{{1, 1}, {2, 2}});
        CHECK(col.origin[0] == std::array<int, 3>{0, 1, 0});
    }

    // Composing projections yields relations that are d-to-d on both sides.
    for (int trial = 0; trial < 5; ++trial) {
        auto bip = make_regular_bip(rng, 3, 2, 4, 2, false);
        auto col = transform_collapse(bip.lc);
        CHECK(col.lc.edges.size() == 2 * 3);  // C(3,2) pairs per right vertex
        for (const Edge& e : col.lc.edges) {
            std::vector<int> left(4, 0), right(4, 0);
            for (auto [a1, a2] : relation_pairs(e.constraint)) {
                ++left[a1 - 1];
                ++right[a2 - 1];
            }
            for (int k = 0; k < 4; ++k) {
                CHECK(left[k] == 2);
                CHECK(right[k] == 2);
            }
        }
    }

    // The hidden left labeling still satisfies everything.
    {
        auto bip = make_regular_bip(rng, 3, 2, 4, 2, true);
        auto col = transform_collapse(bip.lc);
        CHECK(eval_sat(col.lc, singleton_labeling(bip.hidden.lx)) == Rat(1));
    }

    // Parallel edges collapse into a self-loop.
    {
        Relation ident = {{1, 1}, {2, 2}};
        auto lc = make_unweighted(1, 1, 2, 1, {ident}, {{0}}, {{0, 0}, {0, 0}});
        auto col = transform_collapse(lc);
        REQUIRE(col.lc.edges.size() == 1);
        CHECK(col.lc.edges[0].u == 0);
        CHECK(col.lc.edges[0].v == 0);
        CHECK(eval_sat(col.lc, singleton_labeling({1})) == Rat(1));
    }

    // Relations that reuse a left label are rejected.
    {
        Relation doubled = {{1, 1}, {1, 2}};
        auto lc = make_unweighted(2, 1, 2, 1, {doubled}, {{0}, {0}}, {{0, 0}, {1, 0}});
        CHECK_THROWS_AS(transform_collapse(lc), InvalidParameterError);
    }
}

TEST_CASE("duplication soundness carries optima back") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        int d = 1 + trial % 2;
        auto bip = make_weighted_bip(rng, 3, 2, 2 * d, d, false, false);
        Rat opt = opt_weight(bip.lc);
        for (int ell : {2, 3}) {
            auto norm = transform_normalize(bip.lc, ell);
            const BipartiteLC& out = norm.lc;
            for_each_ly(out.ny, out.R / out.d, [&](const std::vector<int>& ly) {
                std::vector<Rat> best(out.nx, Rat(0));
                for (int x = 0; x < out.nx; ++x)
                    for (int a = 1; a <= out.R; ++a)
                        best[x] = std::max(best[x], row_value(out, x, a, ly));
                std::sort(best.begin(), best.end(), std::greater<Rat>());
                // Any (count, threshold) pair achieved by the duplicate
                // instance lower-bounds the source optimum.
                for (int j = 1; j <= out.nx; ++j) {
                    Rat beta(j, out.nx);
                    Rat gamma = best[j - 1];
                    CHECK(opt >= (Rat(1) - Rat(1, ell)) * beta * gamma);
                }
            });
        }
    }
}

TEST_CASE("sequence powering soundness bounds the output optimum") {
    std::mt19937_64 rng(29);
    struct Shape {
        int nx, ny, R, d;
    };
    for (Shape s : {Shape{2, 5, 2, 1}, Shape{2, 9, 4, 2}}) {
        auto bip = make_regular_bip(rng, s.nx, s.ny, s.R, s.d, false);
        int ell = 2;
        auto pw = transform_power(bip.lc, ell);
        Rat opt_out = opt_edge_fraction(pw.lc);

        auto ecount = edge_counts(bip.lc);
        long long alpha = s.ny;
        for (long long j = 1; j < alpha; ++j) {
            Rat gamma(j, alpha);
            if (gamma * Rat(ell * ell * s.d) >= Rat(1)) break;
            // Largest fraction of left vertices that reach j satisfied edges
            // under the best labeling.
            Rat beta(0);
            for_each_ly(s.ny, s.R / s.d, [&](const std::vector<int>& ly) {
                int hit = 0;
                for (int x = 0; x < s.nx; ++x) {
                    long long m = 0;
                    for (int a = 1; a <= s.R; ++a)
                        m = std::max(m, row_count(bip.lc, ecount, x, a, ly));
                    if (m >= j) ++hit;
                }
                beta = std::max(beta, Rat(hit, s.nx));
            });
            Rat bound = beta + Rat(1, ell) + (Rat(1) - beta) * Rat(ell * ell * s.d) * gamma;
            CHECK(opt_out <= bound);
        }
    }
}

TEST_CASE("collapse soundness relates induced subsets to the bipartite optimum") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        int d = 1 + trial % 2;
        auto bip = make_regular_bip(rng, 3, 2, 2 * d, d, false);
        Rat opt = opt_edge_fraction(bip.lc);
        auto col = transform_collapse(bip.lc);
        for (int t : {1, 2}) {
            auto res = isat_t(col.lc, t);
            CHECK(opt >= res.value / Rat(t * t));
        }
    }
}

TEST_CASE("pairwise-disjoint draw probabilities are exact") {
    std::vector<std::vector<int>> singles = {{1}, {2}, {3}};
    CHECK(disjoint_family_prob(singles, 2) == Rat(2, 3));
    CHECK(disjoint_family_prob(singles, 1) == Rat(1));
    CHECK(disjoint_family_prob(singles, 3) == Rat(2, 9));

    std::vector<std::vector<int>> shared = {{1, 2}, {1, 3}};
    CHECK(disjoint_family_prob(shared, 2) == Rat(0));
    CHECK(popular_element(shared) == 1);

    std::vector<std::vector<int>> mixed = {{1}, {2}, {1, 2}};
    CHECK(disjoint_family_prob(mixed, 2) == Rat(2, 9));

    std::vector<std::vector<int>> nested = {{1}, {1, 2}, {1, 3}};
    CHECK(disjoint_family_prob(nested, 2) < Rat(1));
    CHECK(popular_element(nested) == 1);

    // Recompute the frequency bound externally on random families.
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<int>> family;
        std::size_t dmax = 0;
        std::map<int, int> freq;
        for (int i = 0; i < 6; ++i) {
            std::vector<int> set;
            for (int e = 1; e <= 6; ++e)
                if (rng() % 3 == 0) set.push_back(e);
            if (set.size() > 2) set.resize(2);
            family.push_back(set);
            dmax = std::max(dmax, set.size());
            for (int e : set) ++freq[e];
        }
        for (int ell : {2, 3}) {
            Rat prob = disjoint_family_prob(family, ell);
            if (dmax == 0) {
                CHECK(prob == Rat(1));
                continue;
            }
            Rat gamma(0);
            for (auto& [e, c] : freq) {
                (void)e;
                gamma = std::max(gamma, Rat(c, 6));
            }
            Rat factor(static_cast<long long>(ell) * ell *
                       static_cast<long long>(dmax));
            if (gamma * factor < Rat(1)) CHECK(prob >= Rat(1) - factor * gamma);
        }
    }

    CHECK_THROWS_AS(popular_element({{1}, {2}}), InvalidParameterError);
    std::vector<std::vector<int>> big(101, std::vector<int>{1});
    CHECK_THROWS_AS(disjoint_family_prob(big, 3), SizeLimitError);
}

TEST_CASE("the transformation chain preserves perfect satisfiability") {
    std::mt19937_64 rng(43);
    auto bip = make_weighted_bip(rng, 2, 2, 4, 2, true, false);

    auto norm = transform_normalize(bip.lc, 2);
    BipartiteLabeling L1;
    L1.ly = bip.hidden.ly;
    for (int x : norm.origin) L1.lx.push_back(bip.hidden.lx[x]);
    CHECK(satisfied_weight(norm.lc, L1) == total_weight(norm.lc));

    auto uw = transform_unweight(norm.lc, 2);
    CHECK(satisfied_edges(uw.lc, L1) == static_cast<long long>(uw.lc.edges.size()));

    auto pw = transform_power(uw.lc, 2);
    BipartiteLabeling L2;
    L2.ly = L1.ly;
    for (int x : pw.origin_x) L2.lx.push_back(L1.lx[x]);
    CHECK(satisfied_edges(pw.lc, L2) == static_cast<long long>(pw.lc.edges.size()));

    auto col = transform_collapse(pw.lc);
    CHECK(eval_sat(col.lc, singleton_labeling(L2.lx)) == Rat(1));

    // Degree bookkeeping along the way.
    for (long long deg : row_degrees(uw.lc)) CHECK(deg == 2 * norm.lc.ny);
    for (long long deg : row_degrees(pw.lc)) CHECK(deg == 2);
    long long pair_count = 0;
    std::vector<long long> ydeg(pw.lc.ny, 0);
    for (auto [x, y] : pw.lc.edges) {
        (void)x;
        ++ydeg[y];
    }
    for (long long dy : ydeg) pair_count += dy * (dy - 1) / 2;
    CHECK(static_cast<long long>(col.lc.edges.size()) == pair_count);
}
