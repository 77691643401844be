#include <gtest/gtest.h>

#include "losplan/losgraph.hpp"
#include "losplan/planner.hpp"
#include "losplan/visibility.hpp"
#include "oracles.hpp"

using namespace losplan;

namespace {

struct Built {
    std::vector<Triangle> tris;
    std::vector<Region> los;
    std::vector<int> ids;
    AreaLookup lookup;
};

Built build(const Layout& L, double r, double R) {
    Built b;
    b.tris = hyper_triangulate(L, R);
    LosCache cache(L, r, {});
    for (const Triangle& t : b.tris) {
        b.ids.push_back(t.id);
        b.los.push_back(cache.triangle_area(t));
    }
    for (const Triangle& t : b.tris) b.lookup[t.id] = &b.los[t.id];
    return b;
}

}  // namespace

TEST(LosGraph, BasicOperations) {
    LosGraph g({3, 1, 2}, Tier::Primary);
    EXPECT_EQ(g.nodes(), (std::vector<int>{1, 2, 3}));
    g.add_edge(1, 2);
    g.add_edge(2, 1);
    g.add_edge(2, 2);
    g.add_edge(2, 3);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.adjacent(2, 1));
    EXPECT_FALSE(g.adjacent(1, 3));
    EXPECT_FALSE(g.adjacent(2, 2));
    EXPECT_EQ(g.degree(2), 2);
    const std::vector<int> keep{1, 2};
    const LosGraph h = g.induced(keep, Tier::Trinary);
    EXPECT_EQ(h.edge_count(), 1u);
    EXPECT_EQ(h.tier(), Tier::Trinary);
    g.remove_edge(1, 2);
    EXPECT_FALSE(g.adjacent(1, 2));
}

TEST(BuildPrimaryLg, ConvexIsComplete) {
    const Built b = build(oracle::corpus("square"), kUnbounded, 8.0);
    const LosGraph g = build_primary_lg(b.ids, b.los);
    const std::size_t n = b.ids.size();
    EXPECT_EQ(g.edge_count(), n * (n - 1) / 2);
}

TEST(BuildPrimaryLg, RoomsBehindWallDisconnect) {
    // Two rooms joined by a 0.5 m gap over a 2 m wall: no point sees both floors.
    const Layout L = parse_layout(R"({"outer":[[0,0],[4,0],[4,7.5],[6,7.5],[6,0],[10,0],[10,8],[0,8]]})");
    const Built b = build(L, kUnbounded, 1.5);
    const LosGraph g = build_primary_lg(b.ids, b.los);
    auto floor_side = [](const Triangle& t) {
        for (const Point& v : t.vertices) {
            if (v.y > 1.5) return 0;
        }
        return t.centroid().x < 5 ? -1 : 1;
    };
    int pairs = 0;
    for (std::size_t i = 0; i < b.tris.size(); ++i) {
        for (std::size_t j = i + 1; j < b.tris.size(); ++j) {
            EXPECT_EQ(g.adjacent(b.ids[i], b.ids[j]), !intersect(b.los[i], b.los[j]).empty());
            if (floor_side(b.tris[i]) * floor_side(b.tris[j]) == -1) {
                EXPECT_FALSE(g.adjacent(b.ids[i], b.ids[j]));
                ++pairs;
            }
        }
    }
    EXPECT_GT(pairs, 0);
}

TEST(BuildPrimaryLg, SymmetricIrreflexiveAndMismatchThrows) {
    const Built b = build(oracle::corpus("comb"), kUnbounded, kUnbounded);
    const LosGraph g = build_primary_lg(b.ids, b.los);
    for (int a : g.nodes()) {
        EXPECT_FALSE(g.adjacent(a, a));
        for (int c : g.neighbors(a)) EXPECT_TRUE(g.adjacent(c, a));
    }
    const std::vector<int> short_ids(b.ids.begin(), b.ids.end() - 1);
    EXPECT_THROW(build_primary_lg(short_ids, b.los), Error);
}

TEST(BuildPrimaryLg, CombTeethDoNotSeeEachOther) {
    const Layout L = oracle::corpus("comb");
    const Built b = build(L, kUnbounded, 2.0);
    const LosGraph g = build_primary_lg(b.ids, b.los);
    // Triangles wholly inside different teeth (y > 5) are never adjacent.
    auto tooth = [&](const Triangle& t) {
        for (const Point& v : t.vertices) {
            if (v.y < 5) return -1;
        }
        return static_cast<int>(t.centroid().x / 5);
    };
    int pairs = 0;
    for (const Triangle& a : b.tris) {
        for (const Triangle& c : b.tris) {
            if (a.id < c.id && tooth(a) >= 0 && tooth(c) >= 0 && tooth(a) != tooth(c)) {
                EXPECT_FALSE(g.adjacent(a.id, c.id));
                ++pairs;
            }
        }
    }
    EXPECT_GT(pairs, 0);
}

TEST(EdgeElimination, ZeroMsdKeepsGraph) {
    const Built b = build(oracle::corpus("replica"), kUnbounded, kUnbounded);
    const LosGraph g1 = build_primary_lg(b.ids, b.los);
    const CliqueCover s1 = primary_mcc(g1, b.lookup);
    std::vector<Region> forbidden;
    for (const Region& a : s1.areas) forbidden.push_back(forbidden_region(a, 0.0));
    const LosGraph g2 = edge_elimination(g1, s1, forbidden, b.lookup);
    EXPECT_EQ(g2.edge_count(), g1.edge_count());
    EXPECT_EQ(g2.tier(), Tier::Secondary);
}

TEST(EdgeElimination, RuleScopeAndSubset) {
    const Built b = build(oracle::corpus("replica"), 6.0, 6.0);
    const LosGraph g1 = build_primary_lg(b.ids, b.los);
    const CliqueCover s1 = primary_mcc(g1, b.lookup);
    std::vector<Region> forbidden;
    for (const Region& a : s1.areas) forbidden.push_back(forbidden_region(a, 3.0));
    const LosGraph g2 = edge_elimination(g1, s1, forbidden, b.lookup);
    EXPECT_EQ(g2.nodes(), g1.nodes());
    for (int a : g1.nodes()) {
        for (int c : g1.neighbors(a)) {
            if (c < a) continue;
            if (g2.adjacent(a, c)) continue;
            // Only intra-clique edges may go, and only when their overlap is forbidden.
            const int k = s1.clique_of(a);
            ASSERT_EQ(k, s1.clique_of(c));
            EXPECT_TRUE(subtract(intersect(*b.lookup.at(a), *b.lookup.at(c)), forbidden[k]).empty());
        }
        for (int c : g2.neighbors(a)) EXPECT_TRUE(g1.adjacent(a, c));
    }
}

TEST(EdgeElimination, RejectsNonPartition) {
    const Built b = build(oracle::corpus("square"), kUnbounded, kUnbounded);
    const LosGraph g1 = build_primary_lg(b.ids, b.los);
    CliqueCover bad;
    bad.cliques = {{0}};
    bad.areas = {b.los[0]};
    const std::vector<Region> f{Region{}};
    EXPECT_THROW(edge_elimination(g1, bad, f, b.lookup), Error);
}

TEST(BuildTrinaryLg, Rules) {
    const Built b = build(oracle::corpus("square"), kUnbounded, kUnbounded);
    const LosGraph g = build_primary_lg(b.ids, b.los);
    const std::vector<Point> tri{{2, 2}, {12, 2}, {7, 12}};
    EXPECT_EQ(build_trinary_lg(g, tri, b.lookup, 1.0, 40.0).size(), 0u);
    // Tight constraints: nothing qualifies as a triplet.
    EXPECT_EQ(build_trinary_lg(g, tri, b.lookup, 20.0, 60.0).size(), g.size());
    const std::vector<Point> line{{1, 1}, {5, 5}, {9, 9}, {13, 13}};
    EXPECT_EQ(build_trinary_lg(g, line, b.lookup, 1.0, 5.0).size(), g.size());
    EXPECT_THROW(build_trinary_lg(g, std::vector<Point>{}, b.lookup, 1.0, 5.0), Error);
    const LosGraph g3 = build_trinary_lg(g, line, b.lookup, 1.0, 5.0);
    EXPECT_EQ(g3.edge_count(), g.edge_count());
}

TEST(ContainsTriplet, MatchesDefinitionOracle) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0, 10);
    for (int k = 0; k < 2000; ++k) {
        const Point a{U(rng), U(rng)}, b{U(rng), U(rng)}, c{U(rng), U(rng)};
        const double ds = U(rng) / 2, th = U(rng) * 6;
        const std::array<Point, 3> pts{a, b, c};
        EXPECT_EQ(contains_triplet(pts, ds, th), oracle::triplet(a, b, c, ds, th));
    }
}
