#include <catch2/catch.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "arrange/fragment.hpp"
#include "arrange/scenes.hpp"
#include "fixtures.hpp"

using namespace arrange;

namespace {

std::vector<FaceLoops> loops_of(const std::vector<GeometricComplex>& scene) {
    std::vector<FaceLoops> out;
    for (const auto& cx : scene) {
        // faces of the test meshes are single convex loops listed in FV order;
        // use the canonical order around each quad/triangle via unsigned d2
        for (const auto& fv : cx.FV) {
            // rebuild the loop by walking the face edges
            std::vector<CanonicalCell> face_edges;
            for (const auto& ev : cx.EV)
                if (std::includes(fv.begin(), fv.end(), ev.begin(), ev.end()))
                    face_edges.push_back(ev);
            std::map<int, std::vector<int>> adj;
            for (size_t e = 0; e < face_edges.size(); ++e) {
                adj[face_edges[e][0]].push_back(static_cast<int>(e));
                adj[face_edges[e][1]].push_back(static_cast<int>(e));
            }
            std::vector<Vec3> loop;
            int v = fv.front();
            int prev_edge = -1;
            do {
                loop.push_back(cx.V[v]);
                const auto& inc = adj[v];
                int e = inc[0] == prev_edge ? inc[1] : inc[0];
                v = face_edges[e][0] == v ? face_edges[e][1] : face_edges[e][0];
                prev_edge = e;
            } while (v != fv.front());
            out.push_back({loop});
        }
    }
    return out;
}

double fragment_area(const LocalFragment& frag) {
    SignedOperator d1 = signed_boundary_1(frag.complex.EV, frag.complex.vertex_count());
    double area = 0.0;
    // measure each 2-cell inside its own plane
    for (const auto& cyc : frag.face_cycles) {
        Vec3 n{0, 0, 0};
        for (auto [e, s] : cyc.entries()) {
            Vec3 p = frag.complex.V[frag.complex.EV[e][0]];
            Vec3 q = frag.complex.V[frag.complex.EV[e][1]];
            n = n + cross(p, q) * static_cast<double>(s);
        }
        area += 0.5 * norm(n);
    }
    return area;
}

}  // namespace

TEST_CASE("spatial index is conservative and tight enough", "[fragment]") {
    auto scene = random_scene_3d(4, 17);
    auto faces = loops_of(scene);
    std::vector<Box3> boxes;
    for (const auto& f : faces) boxes.push_back(face_box(f));
    SpatialIndex index(boxes, 1e-9);

    for (size_t s = 0; s < faces.size(); ++s) {
        auto got = potential_intersections(static_cast<int>(s), boxes, index);
        std::vector<int> brute;
        for (size_t t = 0; t < faces.size(); ++t)
            if (t != s && boxes[s].overlaps(boxes[t], 1e-9)) brute.push_back(static_cast<int>(t));
        CHECK(got == brute);
    }

    SECTION("far-apart cubes never see each other") {
        auto a = cube_surface({0, 0, 0});
        auto b = cube_surface({10, 10, 10});
        auto fl = loops_of({a, b});
        std::vector<Box3> bx;
        for (const auto& f : fl) bx.push_back(face_box(f));
        SpatialIndex idx(bx, 1e-9);
        for (int s = 0; s < 6; ++s)
            for (int t : potential_intersections(s, bx, idx)) CHECK(t < 6);
    }

    SECTION("cubes sharing a plane see the facing faces") {
        auto a = cube_surface({0, 0, 0});
        auto b = cube_surface({1, 0, 0});
        auto fl = loops_of({a, b});
        std::vector<Box3> bx;
        for (const auto& f : fl) bx.push_back(face_box(f));
        SpatialIndex idx(bx, 1e-9);
        // face 5 of cube a is x=1; it must list its twin (face 4 of cube b)
        auto got = potential_intersections(5, bx, idx);
        CHECK(std::find(got.begin(), got.end(), 10) != got.end());
    }
}

TEST_CASE("submanifold map sends the face plane to z=0", "[fragment]") {
    SECTION("a face already in z=0 stays there") {
        FaceLoops f = {{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}};
        AffineMap q = submanifold_map(f);
        for (const auto& p : f[0]) CHECK(std::fabs(q.apply(p).z) < 1e-12);
    }

    SECTION("a face in x=2 lands on z=0") {
        FaceLoops f = {{{2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {2, 0, 1}}};
        AffineMap q = submanifold_map(f);
        for (const auto& p : f[0]) CHECK(std::fabs(q.apply(p).z) < 1e-12);
        // rigid: distances preserved
        CHECK(norm(q.apply(f[0][0]) - q.apply(f[0][2])) == Approx(std::sqrt(2.0)));
    }

    SECTION("random planes map their normal onto +-z") {
        Rng rng(3);
        for (int rep = 0; rep < 20; ++rep) {
            Vec3 n = normalized({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
            if (norm(n) == 0.0) continue;
            Vec3 u = detail::stable_perpendicular(n);
            Vec3 v = cross(n, u);
            Vec3 base{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
            FaceLoops f = {{base, base + u, base + u + v, base + v}};
            AffineMap q = submanifold_map(f);
            for (const auto& p : f[0]) CHECK(std::fabs(q.apply(p).z) < 1e-9);
            Vec3 mapped_n = q.apply(base + n) - q.apply(base);
            CHECK(std::fabs(std::fabs(mapped_n.z) - 1.0) < 1e-9);
            // round trip
            for (const auto& p : f[0]) CHECK(norm(q.inverse(q.apply(p)) - p) < 1e-9);
        }
    }

    SECTION("non-planar faces are rejected") {
        FaceLoops f = {{{0, 0, 0}, {1, 0, 0}, {1, 1, 0.3}, {0, 1, 0}}};
        CHECK_THROWS_AS(submanifold_map(f), NonPlanarFace);
    }
}

TEST_CASE("slicing a face with the z=0 plane", "[fragment]") {
    SECTION("triangle crossing the plane gives one segment") {
        FaceLoops tri = {{{0, 0, -1}, {0, 0, 1}, {2, 0, 1}}};
        auto segs = slice_face(tri, 1e-9);
        REQUIRE(segs.size() == 1);
        Vec2 a = segs[0].a, b = segs[0].b;
        if (a.x > b.x) std::swap(a, b);
        CHECK(a.x == Approx(0.0));
        CHECK(b.x == Approx(1.0));
        CHECK(a.y == Approx(0.0));
        CHECK(b.y == Approx(0.0));
    }

    SECTION("face away from the plane gives nothing") {
        FaceLoops f = {{{0, 0, 1}, {1, 0, 1}, {1, 1, 2}, {0, 1, 2}}};
        CHECK(slice_face(f, 1e-9).empty());
    }

    SECTION("an L-shaped face crossing in four points pairs alternately") {
        // L profile in the xz-plane crossing z=0 over x in [0,1] and [2,3]
        FaceLoops f = {{{0, 0, -1}, {1, 0, -1}, {1, 0, -0.5}, {2, 0, -0.5},
                       {2, 0, -1}, {3, 0, -1}, {3, 0, 1}, {0, 0, 1}}};
        // lift the two notch vertices above the plane to create 4 crossings
        f[0][2].z = 0.5;
        f[0][3].z = 0.5;
        auto segs = slice_face(f, 1e-9);
        REQUIRE(segs.size() == 2);
        auto key = [](const Segment& s) { return std::min(s.a.x, s.b.x); };
        if (key(segs[0]) > key(segs[1])) std::swap(segs[0], segs[1]);
        CHECK(std::max(segs[0].a.x, segs[0].b.x) < 1.75);
        CHECK(std::min(segs[1].a.x, segs[1].b.x) > 1.25);
    }

    SECTION("coplanar faces contribute their full edge set") {
        FaceLoops f = {{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}};
        CHECK(slice_face(f, 1e-9).size() == 4);
    }

    SECTION("tangent touch contributes nothing") {
        FaceLoops f = {{{0, 0, 0}, {1, 0, 1}, {-1, 0, 1}}};
        CHECK(slice_face(f, 1e-9).empty());
    }
}

TEST_CASE("fragmentation of faces", "[fragment]") {
    SECTION("an isolated face maps to itself") {
        auto scene = std::vector<GeometricComplex>{cube_surface({0, 0, 0})};
        auto faces = loops_of(scene);
        std::vector<Box3> boxes;
        for (const auto& f : faces) boxes.push_back(face_box(f));
        SpatialIndex index(boxes, 1e-9);
        LocalFragment frag = fragment_face(0, faces, boxes, index);
        CHECK(frag.face_cycles.size() == 1);
        CHECK(frag.complex.V.size() == 4);
        CHECK(fragment_area(frag) == Approx(1.0));
    }

    SECTION("crossed coplanar diagonals split both carriers") {
        // two unit squares in the same plane, one rotated: the classic
        // incompatible-diagonal configuration reduced to its plane
        std::vector<FaceLoops> faces = {
            {{{0, 0, 0}, {1, 1, 0}, {1, 1, 1}, {0, 0, 1}}},   // diagonal wall a
            {{{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}}},   // diagonal wall b
        };
        std::vector<Box3> boxes;
        for (const auto& f : faces) boxes.push_back(face_box(f));
        SpatialIndex index(boxes, 1e-9);
        LocalFragment fa = fragment_face(0, faces, boxes, index);
        LocalFragment fb = fragment_face(1, faces, boxes, index);
        CHECK(fa.face_cycles.size() == 2);
        CHECK(fb.face_cycles.size() == 2);
        CHECK(fragment_area(fa) == Approx(std::sqrt(2.0)));
        CHECK(fragment_area(fb) == Approx(std::sqrt(2.0)));
    }

    SECTION("area is conserved and independent of unrelated faces") {
        auto scene = random_scene_3d(3, 23);
        auto faces = loops_of(scene);
        std::vector<Box3> boxes;
        for (const auto& f : faces) boxes.push_back(face_box(f));
        SpatialIndex index(boxes, 1e-9);
        for (int s = 0; s < 6; ++s) {
            LocalFragment frag = fragment_face(s, faces, boxes, index);
            // reference area of the quad
            double ref = 1.0;
            CHECK(fragment_area(frag) == Approx(ref).epsilon(1e-6));

            // feeding the full face set instead of I(sigma) changes nothing
            std::vector<Box3> huge = boxes;
            Box3 all;
            for (const auto& b : boxes) {
                all.expand(b.lo);
                all.expand(b.hi);
            }
            for (auto& b : huge) b = all;
            SpatialIndex full(huge, 1e-9);
            LocalFragment frag_full = fragment_face(s, faces, huge, full);
            CHECK(frag_full.face_cycles.size() == frag.face_cycles.size());
            CHECK(frag_full.complex.V.size() == frag.complex.V.size());
            CHECK(fragment_area(frag_full) == Approx(fragment_area(frag)));
        }
    }
}
