// Shared golden fixtures: small reference complexes with hand-verified
// boundary matrices and traces (0-based indices throughout).
#pragma once

#include <array>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/lar.hpp"
#include "arrange/planar.hpp"

namespace fixtures {

using arrange::CanonicalCell;
using arrange::GeometricComplex;
using arrange::SignedOperator;
using arrange::Vec2;
using arrange::Vec3;

// --- 2-complex with 6 vertices, 8 edges, 3 faces -------------------------

inline std::vector<CanonicalCell> example_ev() {
    return {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 4}, {4, 5}};
}

inline std::vector<std::array<int, 8>> example_signed_d1_dense() {
    return {{-1, -1, 0, 0, 0, 0, 0, 0},
            {+1, 0, -1, -1, -1, 0, 0, 0},
            {0, +1, +1, 0, 0, -1, 0, 0},
            {0, 0, 0, +1, 0, 0, -1, 0},
            {0, 0, 0, 0, +1, 0, +1, -1},
            {0, 0, 0, 0, 0, +1, 0, +1}};
}

inline SignedOperator example_signed_d2() {
    return SignedOperator::from_triples(
        8, 3,
        {{0, 0, +1}, {1, 0, -1}, {2, 0, +1},
         {3, 1, +1}, {4, 1, -1}, {6, 1, +1},
         {2, 2, -1}, {4, 2, +1}, {5, 2, -1}, {7, 2, +1}});
}

// --- square-in-square complex: two 2-cells, eight 1-cells, eight 0-cells --

inline GeometricComplex square_with_hole() {
    GeometricComplex cx;
    cx.dim = 2;
    cx.V = {{0, 0, 0}, {3, 3, 0}, {1, 2, 0}, {2, 1, 0},
            {3, 0, 0}, {1, 1, 0}, {0, 3, 0}, {2, 2, 0}};
    cx.FV = {{0, 1, 2, 3, 4, 5, 6, 7}, {2, 3, 5, 7}};
    cx.EV = {{0, 4}, {0, 6}, {1, 4}, {1, 6}, {2, 5}, {2, 7}, {3, 5}, {3, 7}};
    return cx;
}

// --- the 1-complex of the stepwise 2-cell extraction trace ----------------
//
// A pentagon (the extracted cell) inside an 11-gon rim, joined by five
// spokes.  Seeding the extraction at edge 11 with positive sign follows a
// step-by-step wrap whose corollas and signs were verified by hand.

inline GeometricComplex extraction_complex() {
    GeometricComplex cx;
    cx.dim = 2;
    cx.V = {
        {6, 9, 0},   // 0
        {4, 9, 0},   // 1
        {0, 9, 0},   // 2
        {-1, 6, 0},  // 3
        {-1, 3, 0},  // 4
        {0, 0, 0},   // 5
        {3, -1, 0},  // 6
        {6, 0, 0},   // 7
        {7, 3, 0},   // 8
        {7, 6, 0},   // 9
        {2, 6, 0},   // 10: pentagon
        {4, 6, 0},   // 11: pentagon
        {7, 8, 0},   // 12
        {1, 4, 0},   // 13: pentagon
        {5, 4, 0},   // 14: pentagon
        {3, 2.4, 0}  // 15: pentagon
    };
    cx.EV = {
        {0, 1},    // 0: rim
        {1, 2},    // 1: rim
        {2, 3},    // 2: rim
        {3, 4},    // 3: rim
        {4, 5},    // 4: rim
        {5, 6},    // 5: rim
        {13, 15},  // 6: pentagon
        {14, 15},  // 7: pentagon
        {6, 7},    // 8: rim
        {11, 14},  // 9: pentagon
        {0, 11},   // 10: spoke
        {10, 11},  // 11: pentagon (the seed edge)
        {1, 11},   // 12: spoke
        {2, 10},   // 13: spoke
        {3, 10},   // 14: spoke
        {4, 10},   // 15: spoke
        {10, 13},  // 16: pentagon
        {7, 8},    // 17: rim
        {8, 9},    // 18: rim
        {9, 12},   // 19: rim
        {0, 12}    // 20: rim
    };
    return cx;
}

// Signed support of the cycle extracted from seed edge 11, positive sign.
inline std::vector<std::pair<int, int>> extraction_expected() {
    return {{6, -1}, {7, +1}, {9, +1}, {11, +1}, {16, -1}};
}

// --- cube surface with outward-oriented face cycles ------------------------

inline arrange::SignedOperator cube_d2(GeometricComplex& cx) {
    auto edge_id = [&](int a, int b) {
        CanonicalCell key{std::min(a, b), std::max(a, b)};
        for (size_t e = 0; e < cx.EV.size(); ++e)
            if (cx.EV[e] == key) return static_cast<int>(e);
        throw arrange::Error("edge not found");
    };
    auto loop_cycle = [&](std::vector<int> loop) {
        arrange::SignedChain c(1, static_cast<int>(cx.EV.size()));
        for (size_t i = 0; i < loop.size(); ++i) {
            int a = loop[i], b = loop[(i + 1) % loop.size()];
            c.set(edge_id(a, b), a < b ? 1 : -1);
        }
        return c;
    };
    std::vector<std::vector<int>> loops = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                           {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    std::vector<arrange::SignedChain> cycles;
    for (auto& l : loops) cycles.push_back(loop_cycle(l));
    return arrange::SignedOperator::from_columns(static_cast<int>(cx.EV.size()), cycles);
}

// --- small canonical scenes ------------------------------------------------

inline std::vector<arrange::Segment> unit_square_segments() {
    return {{{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}}};
}

inline std::vector<arrange::Segment> square_segments(Vec2 lo, double side) {
    Vec2 a{lo.x, lo.y}, b{lo.x + side, lo.y}, c{lo.x + side, lo.y + side}, d{lo.x, lo.y + side};
    return {{a, b}, {b, c}, {c, d}, {d, a}};
}

}  // namespace fixtures
