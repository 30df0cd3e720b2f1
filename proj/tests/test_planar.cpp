#include <catch2/catch.hpp>

#include <set>

#include "arrange/arrangement2d.hpp"
#include "arrange/planar.hpp"
#include "arrange/scenes.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace arrange;

namespace {

constexpr double kEps = 1e-9;

// interior-disjointness check for the output graph, brute force
bool edges_interior_disjoint(const PlanarGraph& g) {
    for (size_t e = 0; e < g.EV.size(); ++e)
        for (size_t f = e + 1; f < g.EV.size(); ++f) {
            Vec2 a = g.V[g.EV[e][0]], b = g.V[g.EV[e][1]];
            Vec2 c = g.V[g.EV[f][0]], d = g.V[g.EV[f][1]];
            int o1 = orient2d_sign(a, b, c), o2 = orient2d_sign(a, b, d);
            int o3 = orient2d_sign(c, d, a), o4 = orient2d_sign(c, d, b);
            if (o1 * o2 < 0 && o3 * o4 < 0) return false;  // proper crossing
            // endpoint strictly inside the other segment
            auto strictly_inside = [](Vec2 p, Vec2 s, Vec2 t) {
                return point_on_segment(p, s, t) && !(p == s) && !(p == t);
            };
            if (o1 == 0 && strictly_inside(c, a, b)) return false;
            if (o2 == 0 && strictly_inside(d, a, b)) return false;
            if (o3 == 0 && strictly_inside(a, c, d)) return false;
            if (o4 == 0 && strictly_inside(b, c, d)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("segment validation", "[planar]") {
    std::vector<Segment> raw = {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}, {{2, 2}, {2, 2}}};
    SegmentSet s = validate_segments(raw);
    CHECK(s.segments.size() == 1);
    CHECK(s.dropped_duplicates == 1);
    CHECK(s.dropped_zero_length == 1);
}

TEST_CASE("segment intersection produces the arrangement graph", "[planar]") {
    SECTION("two crossing diagonals give five vertices and four edges") {
        std::vector<Segment> segs = {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
        PlanarGraph g = intersect_segments(segs, kEps);
        CHECK(g.V.size() == 5);
        CHECK(g.EV.size() == 4);
    }

    SECTION("diagonal fragmented by a touching 1-cell") {
        // square diagonal crossed at its midpoint by the other diagonal's half
        std::vector<Segment> segs = {{{0, 0}, {2, 2}}, {{0, 2}, {1, 1}}};
        PlanarGraph g = intersect_segments(segs, kEps);
        CHECK(g.V.size() == 4);
        CHECK(g.EV.size() == 3);  // the long diagonal splits, the short one stays
    }

    SECTION("collinear overlap merges supports") {
        std::vector<Segment> segs = {{{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}};
        PlanarGraph g = intersect_segments(segs, kEps);
        CHECK(g.V.size() == 4);
        CHECK(g.EV.size() == 3);
    }

    SECTION("random soups: outputs are interior-disjoint and search modes agree") {
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            auto segs = random_segments_2d(40, seed);
            PlanarGraph brute = intersect_segments(segs, kEps, PairSearch::brute_force);
            PlanarGraph fast = intersect_segments(segs, kEps, PairSearch::interval_tree);
            REQUIRE(brute.V.size() == fast.V.size());
            REQUIRE(brute.EV == fast.EV);
            for (size_t v = 0; v < brute.V.size(); ++v) {
                CHECK(brute.V[v].x == fast.V[v].x);
                CHECK(brute.V[v].y == fast.V[v].y);
            }
            CHECK(edges_interior_disjoint(fast));
        }
    }
}

TEST_CASE("biconnected filtering", "[planar]") {
    SECTION("square with a pendant edge keeps only the square") {
        PlanarGraph g;
        g.V = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}};
        g.EV = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 4}};
        auto comps = biconnected_filter(g);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].EV.size() == 4);
        CHECK(comps[0].V.size() == 4);
    }

    SECTION("two squares joined at one articulation vertex give two components") {
        PlanarGraph g;
        g.V = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 1}, {2, 2}, {1, 2}};
        g.EV = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}, {4, 5}, {5, 6}, {2, 6}};
        auto comps = biconnected_filter(g);
        CHECK(comps.size() == 2);
    }

    SECTION("random graphs agree with the vertex-removal brute force") {
        Rng rng(21);
        for (int rep = 0; rep < 60; ++rep) {
            int n = 5 + rng.index(15);
            std::set<std::array<int, 2>> eset;
            int target = n + rng.index(n);
            while (static_cast<int>(eset.size()) < target) {
                int a = rng.index(n), b = rng.index(n);
                if (a == b) continue;
                eset.insert({std::min(a, b), std::max(a, b)});
            }
            std::vector<std::array<int, 2>> edges(eset.begin(), eset.end());

            auto groups = biconnected_edge_groups(n, edges);
            std::set<int> kept;
            for (const auto& gr : groups)
                if (gr.size() >= 2) kept.insert(gr.begin(), gr.end());

            // kept edges are exactly the edges on cycles
            for (size_t e = 0; e < edges.size(); ++e)
                CHECK(kept.count(static_cast<int>(e)) ==
                      (oracles::edge_on_cycle_brute(n, edges, e) ? 1u : 0u));

            // every kept group is 2-vertex-connected ...
            for (const auto& gr : groups) {
                if (gr.size() < 2) continue;
                std::vector<std::array<int, 2>> sub;
                for (int e : gr) sub.push_back(edges[e]);
                CHECK(oracles::biconnected_brute(sub));
            }
            // ... and maximal: merging two groups is never 2-connected
            for (size_t a = 0; a < groups.size(); ++a)
                for (size_t b = a + 1; b < groups.size(); ++b) {
                    if (groups[a].size() < 2 || groups[b].size() < 2) continue;
                    std::vector<std::array<int, 2>> sub;
                    for (int e : groups[a]) sub.push_back(edges[e]);
                    for (int e : groups[b]) sub.push_back(edges[e]);
                    CHECK_FALSE(oracles::biconnected_brute(sub));
                }
        }
    }
}

TEST_CASE("2D arrangement of canonical scenes", "[planar]") {
    SECTION("unit square: one bounded cell, boundary columns cancel") {
        auto build = arrangement2d_build(fixtures::unit_square_segments(), kEps);
        const auto& r = build.result;
        CHECK(r.complex.V.size() == 4);
        CHECK(r.complex.EV.size() == 4);
        CHECK(r.boundary_op(2).cols() == 1);
        CHECK(euler_characteristic(r, true) == 2);
        REQUIRE(build.root_shells.size() == 1);
        SignedChain total = r.boundary_op(2).column(0, 2);
        SignedChain outer = build.root_shells[0];
        CHECK((total + outer).is_zero());
    }

    SECTION("two offset squares: 10 vertices, 12 edges, 3 bounded faces") {
        auto segs = fixtures::square_segments({0, 0}, 1.0);
        auto more = fixtures::square_segments({0.5, 0.5}, 1.0);
        segs.insert(segs.end(), more.begin(), more.end());
        auto r = arrangement2d(segs, kEps);
        CHECK(r.complex.V.size() == 10);
        CHECK(r.complex.EV.size() == 12);
        CHECK(r.boundary_op(2).cols() == 3);
        CHECK(euler_characteristic(r, true) == 2);
    }

    SECTION("concentric squares reproduce the cell-with-a-hole complex") {
        auto cx = fixtures::square_with_hole();
        std::vector<Segment> segs;
        for (const auto& e : cx.EV) segs.push_back({cx.V[e[0]].xy(), cx.V[e[1]].xy()});
        auto r = arrangement2d(segs, kEps);
        REQUIRE(r.complex.V.size() == 8);
        REQUIRE(r.complex.EV.size() == 8);
        REQUIRE(r.boundary_op(2).cols() == 2);

        // map output vertices back to the fixture labels by coordinates
        auto vid = [&](Vec3 p) {
            for (size_t v = 0; v < r.complex.V.size(); ++v)
                if (norm(r.complex.V[v] - p) < 1e-9) return static_cast<int>(v);
            FAIL("vertex not found");
            return -1;
        };
        std::vector<CanonicalCell> fv;
        for (const auto& cell : r.complex.FV) fv.push_back(cell);
        std::set<size_t> matched;
        // the outer square face support carries all eight vertices, the hole
        // face exactly the four inner ones
        CanonicalCell inner_expected;
        for (int lbl : {2, 3, 5, 7}) inner_expected.push_back(vid(cx.V[lbl]));
        std::sort(inner_expected.begin(), inner_expected.end());
        bool found_full = false, found_inner = false;
        for (const auto& cell : fv) {
            if (cell.size() == 8) found_full = true;
            if (cell == inner_expected) found_inner = true;
        }
        CHECK(found_full);
        CHECK(found_inner);
        // 8 - 8 + (2 bounded + outer): the ring cell is not a disk, so the
        // count departs from the sphere value
        CHECK(euler_characteristic(r, true) == 3);
    }

    SECTION("empty arrangement is an error") {
        std::vector<Segment> segs = {{{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}};
        CHECK_THROWS_AS(arrangement2d(segs, kEps), EmptyArrangement);
    }

    SECTION("idempotence: rerunning on the output 1-skeleton matches cell counts") {
        auto segs = random_segments_2d(25, 31);
        auto r1 = arrangement2d(segs, kEps);
        std::vector<Segment> skel;
        for (const auto& e : r1.complex.EV)
            skel.push_back({r1.complex.V[e[0]].xy(), r1.complex.V[e[1]].xy()});
        auto r2 = arrangement2d(skel, kEps);
        CHECK(r2.complex.V.size() == r1.complex.V.size());
        CHECK(r2.complex.EV.size() == r1.complex.EV.size());
        CHECK(r2.boundary_op(2).cols() == r1.boundary_op(2).cols());
    }

    SECTION("boundary composition vanishes on random scenes") {
        for (std::uint64_t seed : {41u, 42u}) {
            auto r = arrangement2d(random_segments_2d(30, seed), kEps);
            const auto& d1 = r.boundary_op(1);
            const auto& d2 = r.boundary_op(2);
            for (int j = 0; j < d2.cols(); ++j) CHECK(d1.apply(d2.column(j, 2)).is_zero());
        }
    }
}
