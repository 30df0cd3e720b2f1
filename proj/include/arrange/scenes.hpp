// Deterministic random test scenes: 2D segment soups and collections of
// rigidly moved cube/tetrahedron surface meshes.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "arrange/lar.hpp"
#include "arrange/planar.hpp"

namespace arrange {

// splitmix64: identical output on every platform, unlike <random>
// distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int index(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

// Random chords of the unit square: long segments that intersect densely,
// so the arrangement is connected at moderate counts.
inline std::vector<Segment> random_segments_2d(int n, std::uint64_t seed) {
    Rng rng(seed);
    auto boundary_point = [&](int side, double t) -> Vec2 {
        switch (side) {
            case 0: return {t, 0.0};
            case 1: return {1.0, t};
            case 2: return {t, 1.0};
            default: return {0.0, t};
        }
    };
    std::vector<Segment> segs;
    segs.reserve(n);
    while (static_cast<int>(segs.size()) < n) {
        int sa = rng.index(4);
        int sb = rng.index(4);
        if (sa == sb) continue;
        Vec2 a = boundary_point(sa, rng.uniform(0.05, 0.95));
        Vec2 b = boundary_point(sb, rng.uniform(0.05, 0.95));
        if (norm(b - a) < 0.3) continue;
        segs.push_back({a, b});
    }
    return segs;
}

// Axis-aligned cube surface as quads.
inline GeometricComplex cube_surface(Vec3 lo = {0, 0, 0}, double side = 1.0) {
    GeometricComplex cx;
    cx.dim = 3;
    for (int k = 0; k < 8; ++k)
        cx.V.push_back({lo.x + side * ((k >> 0) & 1), lo.y + side * ((k >> 1) & 1),
                        lo.z + side * ((k >> 2) & 1)});
    auto add_face = [&](std::vector<int> vs) { cx.FV.push_back(canonical(vs)); };
    add_face({0, 1, 3, 2});  // z = lo
    add_face({4, 5, 7, 6});  // z = hi
    add_face({0, 1, 5, 4});  // y = lo
    add_face({2, 3, 7, 6});  // y = hi
    add_face({0, 2, 6, 4});  // x = lo
    add_face({1, 3, 7, 5});  // x = hi
    std::set<std::array<int, 2>> edges;
    for (int axis = 0; axis < 3; ++axis)
        for (int k = 0; k < 8; ++k) {
            int other = k | (1 << axis);
            if (other != k) edges.insert({k, other});
        }
    for (const auto& e : edges) cx.EV.push_back({e[0], e[1]});
    cx.validate();
    return cx;
}

// Regular tetrahedron surface.
inline GeometricComplex tetra_surface(Vec3 base = {0, 0, 0}, double scale = 1.0) {
    GeometricComplex cx;
    cx.dim = 3;
    cx.V = {base, base + Vec3{scale, 0, 0}, base + Vec3{0.5 * scale, 0.866025403784438647 * scale, 0},
            base + Vec3{0.5 * scale, 0.288675134594812882 * scale, 0.816496580927726033 * scale}};
    cx.EV = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    cx.FV = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    return cx;
}

// Rotation about the bounding-box center plus a bounded shift.  Same-size
// convex bodies moved this way with |shift| below half their inradius sum
// always keep overlapping, so merge scenes stay connected.
inline GeometricComplex rigidly_moved(const GeometricComplex& cx, Rng& rng, double max_shift) {
    double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double b = rng.uniform(0.0, std::numbers::pi);
    double c = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double ca = std::cos(a), sa = std::sin(a);
    double cb = std::cos(b), sb = std::sin(b);
    double cc = std::cos(c), sc = std::sin(c);
    Vec3 shift{rng.uniform(-max_shift, max_shift), rng.uniform(-max_shift, max_shift),
               rng.uniform(-max_shift, max_shift)};
    Box3 box = cx.bounding_box();
    Vec3 center = (box.lo + box.hi) * 0.5;
    GeometricComplex out = cx;
    for (auto& p : out.V) {
        Vec3 d = p - center;
        Vec3 q{ca * d.x - sa * d.y, sa * d.x + ca * d.y, d.z};        // rotate about z
        Vec3 r{cb * q.x + sb * q.z, q.y, -sb * q.x + cb * q.z};       // rotate about y
        Vec3 s{r.x, cc * r.y - sc * r.z, sc * r.y + cc * r.z};        // rotate about x
        p = center + s + shift;
    }
    return out;
}

// A merge scene: one cube at the origin plus k-1 rigidly moved copies whose
// translations keep them overlapping the first.
inline std::vector<GeometricComplex> random_scene_3d(int k, std::uint64_t seed,
                                                     bool use_tetra = false) {
    Rng rng(seed);
    std::vector<GeometricComplex> scene;
    scene.push_back(use_tetra ? tetra_surface() : cube_surface());
    for (int i = 1; i < k; ++i)
        scene.push_back(rigidly_moved(use_tetra ? tetra_surface() : cube_surface(), rng, 0.35));
    return scene;
}

}  // namespace arrange
