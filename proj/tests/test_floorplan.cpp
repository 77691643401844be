#include <gtest/gtest.h>

#include "losplan/floorplan.hpp"
#include "oracles.hpp"

using namespace losplan;

namespace {

const char* kUnitSquare = R"({"name":"unit","outer":[[0,0],[1,0],[1,1],[0,1]]})";
const char* kLShape = R"({"name":"L","outer":[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]})";

bool has_code(const std::vector<Diagnostic>& d, const std::string& code) {
    return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.code == code; });
}

}  // namespace

TEST(ParseLayout, UnitSquare) {
    const Layout L = parse_layout(kUnitSquare);
    EXPECT_EQ(L.outer.size(), 4u);
    EXPECT_TRUE(L.holes.empty());
    EXPECT_EQ(L.name, "unit");
    EXPECT_DOUBLE_EQ(L.area(), 1.0);
}

TEST(ParseLayout, LShapeHasOneReflexVertexAtOneOne) {
    const Layout L = parse_layout(kLShape);
    ASSERT_EQ(L.outer.size(), 6u);
    std::vector<Point> reflex;
    for (std::size_t i = 0; i < 6; ++i) {
        const Point a = L.outer[(i + 5) % 6], b = L.outer[i], c = L.outer[(i + 1) % 6];
        if ((b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) < 0) reflex.push_back(b);
    }
    ASSERT_EQ(reflex.size(), 1u);
    EXPECT_EQ(reflex[0], (Point{1, 1}));
}

TEST(ParseLayout, ClockwiseOuterIsReversed) {
    const Layout L = parse_layout(R"({"outer":[[0,0],[0,1],[1,1],[1,0]]})");
    EXPECT_GT(signed_area(L.outer), 0.0);
}

TEST(ParseLayout, CounterClockwiseHoleIsReversed) {
    const Layout L = parse_layout(R"({"outer":[[0,0],[4,0],[4,4],[0,4]],"holes":[[[1,1],[2,1],[2,2],[1,2]]]})");
    ASSERT_EQ(L.holes.size(), 1u);
    EXPECT_LT(signed_area(L.holes[0]), 0.0);
    EXPECT_DOUBLE_EQ(L.area(), 15.0);
}

TEST(ParseLayout, CollapsesDuplicateVertices) {
    const Layout L = parse_layout(R"({"outer":[[0,0],[1,0],[1,0],[1,1],[0,1]]})");
    EXPECT_EQ(L.outer.size(), 4u);
}

TEST(ParseLayout, RejectsDegenerateAfterDedup) {
    EXPECT_THROW(parse_layout(R"({"outer":[[0,0],[1,0],[1,0],[0,0]]})"), Error);
}

TEST(ParseLayout, RejectsMalformedJson) {
    try {
        parse_layout("{\"outer\": [[0,0],");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::Parse);
    }
}

TEST(ParseLayout, RejectsBowTie) {
    try {
        parse_layout(R"({"outer":[[0,0],[2,2],[2,0],[0,2]]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::Validation);
    }
}

TEST(ParseLayout, RoundTripIsExact) {
    for (const std::string& name : oracle::corpus_names()) {
        const Layout L = oracle::corpus(name);
        EXPECT_EQ(parse_layout(serialize_layout(L)), L) << name;
    }
    const Layout odd = parse_layout(R"({"outer":[[0.1,0.2],[3.3333333333333335,0.7],[1e-3,2.718281828459045]]})");
    EXPECT_EQ(parse_layout(serialize_layout(odd)), odd);
}

TEST(ValidateLayout, CorpusIsClean) {
    for (const std::string& name : oracle::corpus_names()) {
        EXPECT_TRUE(validate_layout(oracle::corpus(name)).empty()) << name;
    }
}

TEST(ValidateLayout, BowTieNamesEdgePair) {
    Layout L;
    L.outer = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    const auto d = validate_layout(L);
    ASSERT_TRUE(has_code(d, "self-intersection"));
    const auto it = std::find_if(d.begin(), d.end(), [](const Diagnostic& x) { return x.code == "self-intersection"; });
    EXPECT_EQ(it->vertices, (std::vector<int>{0, 1, 2, 3}));
}

TEST(ValidateLayout, HoleCrossingOuter) {
    Layout L;
    L.outer = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    L.holes = {{{3, 1}, {3, 2}, {5, 2}, {5, 1}}};
    EXPECT_TRUE(has_code(validate_layout(L), "hole-not-strictly-inside"));
}

TEST(ValidateLayout, OverlappingHoles) {
    Layout L;
    L.outer = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    L.holes = {{{1, 1}, {1, 4}, {4, 4}, {4, 1}}, {{3, 3}, {3, 6}, {6, 6}, {6, 3}}};
    EXPECT_TRUE(has_code(validate_layout(L), "holes-overlap"));
}

TEST(ValidateLayout, CorruptedCorpusMutants) {
    for (const std::string& name : oracle::corpus_names()) {
        Layout L = oracle::corpus(name);
        // Swap two non-adjacent outer vertices: the ring folds over itself.
        std::swap(L.outer[0], L.outer[2]);
        EXPECT_FALSE(validate_layout(L).empty()) << name;

        Layout M = oracle::corpus(name);
        // A hole poking outside the outer ring.
        const Box b = M.bounds();
        M.holes.push_back({{b.max.x - 0.5, b.min.y + 0.5}, {b.max.x - 0.5, b.min.y + 1.0}, {b.max.x + 1, b.min.y + 1.0},
                           {b.max.x + 1, b.min.y + 0.5}});
        EXPECT_FALSE(validate_layout(M).empty()) << name;
    }
}

TEST(PlanConfig, ChecksFeasibleIntervals) {
    PlanConfig c;
    EXPECT_NO_THROW(c.check());
    c.range_r = 1.0;
    c.msd_ds = 2.5;
    EXPECT_THROW(c.check(), Error);
    c.msd_ds = 2.0;
    EXPECT_NO_THROW(c.check());
    c.msa_thetas = 61.0;
    EXPECT_THROW(c.check(), Error);
    c.msa_thetas = 60.0;
    c.coverage_n = 4;
    EXPECT_THROW(c.check(), Error);
}

TEST(PointInLayout, ClosedSemantics) {
    const Layout L = oracle::corpus("square_hole");
    EXPECT_TRUE(point_in_layout(L, {1, 1}));
    EXPECT_TRUE(point_in_layout(L, {0, 5}));
    EXPECT_TRUE(point_in_layout(L, {8, 10}));
    EXPECT_FALSE(point_in_layout(L, {11, 11}));
    EXPECT_FALSE(point_in_layout(L, {-0.1, 5}));
}
