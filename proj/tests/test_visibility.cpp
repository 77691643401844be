#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "losplan/visibility.hpp"
#include "oracles.hpp"

using namespace losplan;

namespace {

const Layout& lshape_small() {
    static const Layout L = parse_layout(R"({"outer":[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]})");
    return L;
}

Point random_in(const Layout& L, std::mt19937_64& rng, double margin = 1e-3) {
    const Box b = L.bounds();
    std::uniform_real_distribution<double> X(b.min.x, b.max.x), Y(b.min.y, b.max.y);
    for (;;) {
        const Point p{X(rng), Y(rng)};
        if (oracle::inside(L, p) && oracle::boundary_dist(L, p) > margin) return p;
    }
}

Point random_in_triangle(const Triangle& t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double u = U(rng), v = U(rng);
    if (u + v > 1) u = 1 - u, v = 1 - v;
    return t.vertices[0] + (t.vertices[1] - t.vertices[0]) * u + (t.vertices[2] - t.vertices[0]) * v;
}

}  // namespace

TEST(LosAreaPoint, ConvexUnboundedIsWholeLayout) {
    const Layout sq = oracle::corpus("square");
    for (Point p : {Point{3, 4}, Point{11, 11}, Point{21.5, 0.5}}) {
        const LosArea a = los_area_point(sq, p, kUnbounded);
        EXPECT_NEAR(a.region.area(), 484.0, 1e-9);
    }
}

TEST(LosAreaPoint, LShapeShadow) {
    const Region a = los_area_point(lshape_small(), {1.5, 0.5}, kUnbounded).region;
    EXPECT_TRUE(point_in_region({0.9, 1.05}, a));
    EXPECT_TRUE(point_in_region({1.5, 0.5}, a));
    // (0.25,1.5) is visible: the sight line passes x=1 at y=0.9, below the corner.
    EXPECT_TRUE(point_in_region({0.25, 1.5}, a));
    EXPECT_FALSE(point_in_region({0.5, 1.9}, a));
    EXPECT_FALSE(point_in_region({0.9, 1.9}, a));
    // The shadow boundary is the ray from P through (1,1): y - 1 = -(x - 1).
    EXPECT_TRUE(point_in_region({0.5, 1.45}, a));
    EXPECT_FALSE(point_in_region({0.5, 1.55}, a));
}

TEST(LosAreaPoint, RangeOnlyClip) {
    const Layout sq = parse_layout(R"({"outer":[[0,0],[1,0],[1,1],[0,1]]})");
    AreaOptions opt;
    const Region a = los_area_point(sq, {0.5, 0.5}, 0.2, opt).region;
    EXPECT_NEAR(a.area(), disk_region({{0.5, 0.5}, 0.2}, opt.arc_segments).area(), 1e-9);
}

TEST(LosAreaPoint, OutsideSourceThrows) {
    EXPECT_THROW(los_area_point(lshape_small(), {1.5, 1.5}, kUnbounded), Error);
}

TEST(LosAreaPoint, BoundarySourceOnHoleCorner) {
    const Layout L = oracle::corpus("square_hole");
    const Region a = los_area_point(L, {8, 8}, kUnbounded).region;
    EXPECT_LT(a.area(), L.area() - 1.0);
    EXPECT_TRUE(point_in_region({20, 8}, a));
    EXPECT_TRUE(point_in_region({8, 20}, a));
    EXPECT_FALSE(point_in_region({20, 20}, a));
}

TEST(LosAreaPoint, MatchesSightOracleOnCorpus) {
    std::mt19937_64 rng(21);
    for (const std::string& name : oracle::corpus_names()) {
        const Layout L = oracle::corpus(name);
        for (double r : {kUnbounded, 5.0}) {
            for (int k = 0; k < 4; ++k) {
                const Point P = random_in(L, rng);
                const Region a = los_area_point(L, P, r).region;
                int bad = 0;
                for (int s = 0; s < 150; ++s) {
                    const Point X = random_in(L, rng);
                    if (boundary_distance(X, a) < 1e-3) continue;
                    // Inscribed discretization: the ring between the polygon and the circle is ambiguous.
                    const double d = distance(X, P);
                    if (!is_unbounded(r) && d > r * std::cos(std::numbers::pi / 64) && d <= r) continue;
                    const bool want = oracle::sees(L, P, X, 1e-7, 0.01) && (is_unbounded(r) || d <= r);
                    bad += region_contains(a, X) != want;
                }
                EXPECT_EQ(bad, 0) << name << " P=(" << P.x << "," << P.y << ") r=" << r;
            }
        }
    }
}

TEST(LosAreaPoint, Symmetry) {
    std::mt19937_64 rng(8);
    const Layout L = oracle::corpus("replica");
    LosCache cache(L, kUnbounded, {});
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        const Point P = random_in(L, rng), X = random_in(L, rng);
        const Region& lp = cache.point_area(P);
        const Region& lx = cache.point_area(X);
        if (boundary_distance(X, lp) < 1e-6 || boundary_distance(P, lx) < 1e-6) continue;
        EXPECT_EQ(region_contains(lp, X), region_contains(lx, P));
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(LosAreaPoint, MonotoneInRange) {
    std::mt19937_64 rng(9);
    const Layout L = oracle::corpus("comb");
    for (int k = 0; k < 10; ++k) {
        const Point P = random_in(L, rng);
        const Region small = los_area_point(L, P, 2.0).region;
        const Region big = los_area_point(L, P, 4.0).region;
        EXPECT_LT(subtract(small, big, 0.0).area(), 1e-9);
        EXPECT_LE(small.area(), big.area());
    }
}

TEST(LosAreaPolygon, ConvexTriangleSeesSquare) {
    const Layout sq = parse_layout(R"({"outer":[[0,0],[1,0],[1,1],[0,1]]})");
    const std::array<Point, 3> t{{{0, 0}, {1, 0}, {0, 1}}};
    EXPECT_NEAR(los_area_polygon(sq, t, kUnbounded).region.area(), 1.0, 1e-12);
}

TEST(LosAreaPolygon, LShapeCornerTriangleIsIntersectionOfVertexAreas) {
    const Layout& L = lshape_small();
    const std::array<Point, 3> t{{{1.6, 0.1}, {1.9, 0.1}, {1.9, 0.4}}};
    const Region a = los_area_polygon(L, t, kUnbounded).region;
    Region want = los_area_point(L, t[0], kUnbounded).region;
    for (int i = 1; i < 3; ++i) want = intersect(want, los_area_point(L, t[i], kUnbounded).region);
    EXPECT_NEAR(a.area(), want.area(), 1e-9);
    EXPECT_LT(a.area(), L.area() - 0.1);
    EXPECT_FALSE(point_in_region({0.2, 1.9}, a));
    EXPECT_TRUE(point_in_region({0.2, 0.2}, a));
}

TEST(LosAreaPolygon, ZeroRangeIsEmpty) {
    const std::array<Point, 3> t{{{0.1, 0.1}, {0.5, 0.1}, {0.1, 0.5}}};
    EXPECT_TRUE(los_area_polygon(lshape_small(), t, 0.0).region.empty());
}

TEST(LosAreaPolygon, HoleBetweenViewerAndTriangle) {
    // A pillar can hide the middle of a triangle while all three corners stay visible.
    const Layout L = parse_layout(
        R"({"outer":[[0,0],[20,0],[20,20],[0,20]],"holes":[[[9.5,9.5],[9.5,10.5],[10.5,10.5],[10.5,9.5]]]})");
    const std::array<Point, 3> t{{{8, 15}, {12, 15}, {11.5, 17}}};
    const Region a = los_area_polygon(L, t, kUnbounded).region;
    EXPECT_TRUE(oracle::sees(L, {10, 3}, t[0]));
    EXPECT_TRUE(oracle::sees(L, {10, 3}, t[1]));
    EXPECT_TRUE(oracle::sees(L, {10, 3}, t[2]));
    EXPECT_FALSE(oracle::sees(L, {10, 3}, {10, 15.5}));
    EXPECT_FALSE(point_in_region({10, 3}, a));
    EXPECT_TRUE(point_in_region({2, 18}, a));
}

TEST(LosAreaPolygon, EveryInteriorPointVisibleFromArea) {
    std::mt19937_64 rng(13);
    int samples = 0;
    for (const std::string& name : oracle::corpus_names()) {
        const Layout L = oracle::corpus(name);
        for (double r : {kUnbounded, 4.0}) {
            const auto tris = hyper_triangulate(L, is_unbounded(r) ? 6.0 : r);
            LosCache cache(L, r, {});
            std::uniform_int_distribution<std::size_t> pick(0, tris.size() - 1);
            for (int k = 0; k < 110; ++k) {
                const Triangle& t = tris[pick(rng)];
                const Region& a = cache.triangle_area(t);
                if (a.empty()) continue;
                const std::vector<Point> verts = a.vertices();
                // A point of L(t): a random convex mix along one ring edge pulled toward the centroid.
                const Point c = region_centroid(a);
                std::uniform_int_distribution<std::size_t> vi(0, verts.size() - 1);
                Point X = verts[vi(rng)];
                X = X + (c - X) * std::uniform_real_distribution<double>(0.01, 0.99)(rng);
                if (!region_contains(a, X)) continue;
                const Point Q = random_in_triangle(t, rng);
                ++samples;
                EXPECT_TRUE(oracle::sees(L, X, Q, 1e-7, 0.01)) << name << " tri " << t.id;
                if (!is_unbounded(r)) {
                    EXPECT_LE(distance(X, Q), r + 1e-9) << name;
                }
            }
        }
    }
    EXPECT_GE(samples, 1000);
}

TEST(LosAreaClique, SingletonAndAbsorbing) {
    const LosArea a = los_area_point(lshape_small(), {0.5, 0.5}, kUnbounded);
    const std::array<LosArea, 1> one{a};
    EXPECT_NEAR(los_area_clique(one).region.area(), a.region.area(), 1e-12);
    const std::array<LosArea, 2> two{a, LosArea{Region{}, "empty", kUnbounded}};
    EXPECT_TRUE(los_area_clique(two).region.empty());
    EXPECT_THROW(los_area_clique(std::span<const LosArea>{}), Error);
}

TEST(LosAreaClique, SharedRoomOverlapsSealedRoomDoesNot) {
    const Layout replica = oracle::corpus("replica");
    LosCache open(replica, kUnbounded, {});
    const std::array<Point, 3> sw{{{1, 2}, {2, 2}, {1, 3}}};
    const std::array<Point, 3> sw2{{{3, 5}, {4, 5}, {3, 6}}};
    EXPECT_FALSE(intersect(open.polygon_area(sw), open.polygon_area(sw2)).empty());
    // Two rooms joined by a 0.5 m gap above a 7.5 m wall: no point sees both floors.
    const Layout rooms = parse_layout(R"({"outer":[[0,0],[4,0],[4,7.5],[6,7.5],[6,0],[10,0],[10,8],[0,8]]})");
    LosCache sealed(rooms, kUnbounded, {});
    const std::array<Point, 3> left{{{1, 0.5}, {2, 0.5}, {1, 1}}};
    const std::array<Point, 3> right{{{9, 0.5}, {9, 1}, {8, 0.5}}};
    EXPECT_TRUE(intersect(sealed.polygon_area(left), sealed.polygon_area(right)).empty());
}

TEST(LosAreaClique, ReplicaHasMutuallyHiddenTriangles) {
    const Layout L = oracle::corpus("replica");
    const auto tris = triangulate(L);
    LosCache cache(L, kUnbounded, {});
    const Triangle* a = nullptr;
    const Triangle* b = nullptr;
    for (std::size_t i = 0; i < tris.size() && !a; ++i) {
        for (std::size_t j = i + 1; j < tris.size(); ++j) {
            if (intersect(cache.triangle_area(tris[i]), cache.triangle_area(tris[j])).empty()) {
                a = &tris[i];
                b = &tris[j];
                break;
            }
        }
    }
    ASSERT_NE(a, nullptr);
    // No grid point sees both triangles whole. Probing the edges suffices: any
    // patch a wall hides inside a triangle reaches the triangle's far edge.
    std::vector<Point> probes;
    for (const Triangle* t : {a, b}) {
        for (int k = 0; k < 3; ++k) {
            const Point u = t->vertices[k], v = t->vertices[(k + 1) % 3];
            const int n = static_cast<int>(distance(u, v) / 0.02) + 1;
            for (int i = 0; i <= n; ++i) probes.push_back(u + (v - u) * (static_cast<double>(i) / n));
        }
    }
    for (double x = 0.05; x < 22; x += 0.25) {
        for (double y = 0.05; y < 22; y += 0.25) {
            const Point p{x, y};
            if (!oracle::inside(L, p) || oracle::boundary_dist(L, p) < 1e-3) continue;
            bool all = true;
            for (std::size_t i = 0; i < probes.size() && all; ++i) all = oracle::sees_exact(L, p, probes[i]);
            EXPECT_FALSE(all) << x << "," << y;
        }
    }
}
