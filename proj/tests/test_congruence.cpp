#include <catch2/catch.hpp>

#include "arrange/congruence.hpp"
#include "arrange/scenes.hpp"
#include "fixtures.hpp"

using namespace arrange;

namespace {

// a unit-square face fragment in 3D with one CCW cycle, translated by `at`
LocalFragment square_fragment(Vec3 at, int source, double jitter = 0.0) {
    LocalFragment f;
    f.source_face = source;
    f.complex.dim = 3;
    f.complex.V = {at,
                   at + Vec3{1, 0, 0},
                   at + Vec3{1, 1, jitter},
                   at + Vec3{0, 1, 0}};
    f.complex.EV = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    SignedChain cyc(2, 4);
    cyc.set(0, 1);   // 0 -> 1
    cyc.set(2, 1);   // 1 -> 2
    cyc.set(3, 1);   // 2 -> 3
    cyc.set(1, -1);  // 3 -> 0
    f.face_cycles = {cyc};
    f.complex.FV = {{0, 1, 2, 3}};
    return f;
}

}  // namespace

TEST_CASE("quotient identifies shared cells", "[congruence]") {
    SECTION("two fragments sharing an edge within tolerance") {
        LocalFragment a = square_fragment({0, 0, 0}, 0);
        LocalFragment b = square_fragment({1.0 + 1e-12, 0, 0}, 1);
        QuotientResult q = quotient_complex({a, b}, 1e-8);
        CHECK(q.complex.V.size() == 6);
        CHECK(q.complex.EV.size() == 7);  // shared edge appears once
        CHECK(q.complex.FV.size() == 2);
        CHECK(q.d1.apply(q.face_cycles[0]).is_zero());
        CHECK(q.d1.apply(q.face_cycles[1]).is_zero());
    }

    SECTION("congruent duplicate faces identify, lower source index first") {
        LocalFragment a = square_fragment({0, 0, 0}, 3);
        LocalFragment b = square_fragment({1e-12, 0, 0}, 7);
        QuotientResult q = quotient_complex({a, b}, 1e-8);
        CHECK(q.complex.FV.size() == 1);
        CHECK(q.map.face_map == std::vector<int>{0, 0});
        // canonical orientation: lowest edge keeps its stored direction
        CHECK(q.face_cycles[0].entries().front().second == +1);
    }

    SECTION("no output vertices within tolerance of each other") {
        LocalFragment a = square_fragment({0, 0, 0}, 0);
        LocalFragment b = square_fragment({0.5, 0.5, 0.25}, 1);
        QuotientResult q = quotient_complex({a, b}, 1e-6);
        for (size_t i = 0; i < q.complex.V.size(); ++i)
            for (size_t j = i + 1; j < q.complex.V.size(); ++j)
                CHECK(norm(q.complex.V[i] - q.complex.V[j]) > 1e-6);
    }

    SECTION("quotient is idempotent") {
        LocalFragment a = square_fragment({0, 0, 0}, 0);
        LocalFragment b = square_fragment({1.0 + 1e-12, 0, 0}, 1);
        QuotientResult q1 = quotient_complex({a, b}, 1e-8);
        LocalFragment again;
        again.complex = q1.complex;
        again.face_cycles = q1.face_cycles;
        again.source_face = 0;
        QuotientResult q2 = quotient_complex({again}, 1e-8);
        CHECK(q2.complex.V == q1.complex.V);
        CHECK(q2.complex.EV == q1.complex.EV);
        CHECK(q2.face_cycles == q1.face_cycles);
    }

    SECTION("ambiguous chained clusters are rejected") {
        LocalFragment a = square_fragment({0, 0, 0}, 0);
        // a chain of vertices spaced just under the tolerance spans too far
        LocalFragment b = square_fragment({0.9e-6, 0, 0}, 1);
        LocalFragment c = square_fragment({1.8e-6, 0, 0}, 2);
        LocalFragment d = square_fragment({2.7e-6, 0, 0}, 3);
        CHECK_THROWS_AS(quotient_complex({a, b, c, d}, 1e-6), ToleranceCollision);
    }
}

TEST_CASE("quotient of fragmented cube pair counts match", "[congruence]") {
    // two cubes sharing the x=1 face, entered as pre-fragmented surface quads
    auto mk_quad = [](std::vector<Vec3> pts, int src) {
        LocalFragment f;
        f.source_face = src;
        f.complex.dim = 3;
        f.complex.V = pts;
        f.complex.EV = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
        SignedChain cyc(2, 4);
        cyc.set(0, 1);
        cyc.set(2, 1);
        cyc.set(3, 1);
        cyc.set(1, -1);
        f.face_cycles = {cyc};
        f.complex.FV = {{0, 1, 2, 3}};
        return f;
    };
    std::vector<LocalFragment> frags;
    int src = 0;
    auto add_cube = [&](Vec3 lo) {
        double s = 1.0;
        Vec3 o = lo;
        auto P = [&](double x, double y, double z) { return o + Vec3{x * s, y * s, z * s}; };
        frags.push_back(mk_quad({P(0, 0, 0), P(1, 0, 0), P(1, 1, 0), P(0, 1, 0)}, src++));
        frags.push_back(mk_quad({P(0, 0, 1), P(1, 0, 1), P(1, 1, 1), P(0, 1, 1)}, src++));
        frags.push_back(mk_quad({P(0, 0, 0), P(1, 0, 0), P(1, 0, 1), P(0, 0, 1)}, src++));
        frags.push_back(mk_quad({P(0, 1, 0), P(1, 1, 0), P(1, 1, 1), P(0, 1, 1)}, src++));
        frags.push_back(mk_quad({P(0, 0, 0), P(0, 1, 0), P(0, 1, 1), P(0, 0, 1)}, src++));
        frags.push_back(mk_quad({P(1, 0, 0), P(1, 1, 0), P(1, 1, 1), P(1, 0, 1)}, src++));
    };
    add_cube({0, 0, 0});
    add_cube({1, 0, 0});
    QuotientResult q = quotient_complex(frags, 1e-9);
    CHECK(q.complex.V.size() == 12);
    CHECK(q.complex.EV.size() == 20);
    CHECK(q.complex.FV.size() == 11);
    for (const auto& cyc : q.face_cycles) CHECK(q.d1.apply(cyc).is_zero());
}
