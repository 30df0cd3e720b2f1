// Independent fragmentation of input 2-cells: each face is mapped to z=0
// together with its potential intersectors, sliced into a local set of 2D
// segments, arranged in the plane, restricted to the face support, and
// mapped back to 3-space.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrange/arrangement2d.hpp"
#include "arrange/errors.hpp"
#include "arrange/geometry.hpp"
#include "arrange/lar.hpp"
#include "arrange/planar.hpp"
#include "arrange/spatial.hpp"

namespace arrange {

// Face of an input complex, as boundary loops of 3D positions.
using FaceLoops = std::vector<std::vector<Vec3>>;

// Three 1D interval trees over the x/y/z extents of face bounding boxes;
// queries return a conservative superset of the true intersectors.
class SpatialIndex {
public:
    SpatialIndex(const std::vector<Box3>& boxes, double pad) : pad_(pad) {
        std::vector<IntervalTree::Interval> xs, ys, zs;
        for (size_t i = 0; i < boxes.size(); ++i) {
            int id = static_cast<int>(i);
            xs.push_back({boxes[i].lo.x, boxes[i].hi.x, id});
            ys.push_back({boxes[i].lo.y, boxes[i].hi.y, id});
            zs.push_back({boxes[i].lo.z, boxes[i].hi.z, id});
        }
        tx_ = IntervalTree(xs);
        ty_ = IntervalTree(ys);
        tz_ = IntervalTree(zs);
    }

    std::vector<int> query(const Box3& b) const {
        auto qx = tx_.query(b.lo.x - pad_, b.hi.x + pad_);
        auto qy = ty_.query(b.lo.y - pad_, b.hi.y + pad_);
        auto qz = tz_.query(b.lo.z - pad_, b.hi.z + pad_);
        std::vector<int> xy, out;
        std::set_intersection(qx.begin(), qx.end(), qy.begin(), qy.end(), std::back_inserter(xy));
        std::set_intersection(xy.begin(), xy.end(), qz.begin(), qz.end(), std::back_inserter(out));
        return out;
    }

private:
    IntervalTree tx_{{}}, ty_{{}}, tz_{{}};
    double pad_;
};

inline Box3 face_box(const FaceLoops& loops) {
    Box3 b;
    for (const auto& loop : loops)
        for (const auto& p : loop) b.expand(p);
    return b;
}

// I(sigma): faces whose box overlaps sigma's box in all three axes.
inline std::vector<int> potential_intersections(int sigma, const std::vector<Box3>& boxes,
                                                const SpatialIndex& index) {
    auto hits = index.query(boxes[sigma]);
    std::erase(hits, sigma);
    return hits;
}

// Rigid motion carrying a plane onto z=0: the rotation takes the plane
// normal onto +z about normal x z (identity when already aligned), and the
// face's first vertex lands at the origin.
struct AffineMap {
    Vec3 r0{1, 0, 0}, r1{0, 1, 0}, r2{0, 0, 1};  // rotation rows
    Vec3 origin{0, 0, 0};

    Vec3 apply(Vec3 p) const {
        Vec3 d = p - origin;
        return {dot(r0, d), dot(r1, d), dot(r2, d)};
    }
    Vec3 inverse(Vec3 q) const {
        // rotation rows are orthonormal: columns of the inverse
        return origin + Vec3{r0.x * q.x + r1.x * q.y + r2.x * q.z,
                             r0.y * q.x + r1.y * q.y + r2.y * q.z,
                             r0.z * q.x + r1.z * q.y + r2.z * q.z};
    }
};

inline Vec3 face_normal(const FaceLoops& loops) {
    Vec3 n{0, 0, 0};
    for (const auto& loop : loops)
        for (size_t i = 0; i < loop.size(); ++i) n = n + cross(loop[i], loop[(i + 1) % loop.size()]);
    double len = norm(n);
    if (len == 0.0) throw DegenerateGeometry("face with vanishing area");
    return n * (1.0 / len);
}

inline AffineMap submanifold_map(const FaceLoops& loops, double coplanar_tol = 1e-9) {
    if (loops.empty() || loops.front().size() < 3)
        throw DegenerateGeometry("face needs at least one loop of three vertices");
    Vec3 n = face_normal(loops);
    Vec3 p0 = loops.front().front();

    AffineMap m;
    m.origin = p0;
    Vec3 z{0, 0, 1};
    Vec3 axis = cross(n, z);
    double s = norm(axis);
    double c = n.z;  // dot(n, z)
    if (s < 1e-15) {
        if (c > 0.0) {
            // identity rotation
        } else {
            // opposite normal: half turn about x
            m.r1 = {0, -1, 0};
            m.r2 = {0, 0, -1};
        }
    } else {
        axis = axis * (1.0 / s);
        // Rodrigues rotation by the angle between n and z
        auto rot = [&](Vec3 v) {
            return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
        };
        // rows of the matrix are the images of the basis vectors transposed
        Vec3 cx = rot({1, 0, 0}), cy = rot({0, 1, 0}), cz = rot({0, 0, 1});
        m.r0 = {cx.x, cy.x, cz.x};
        m.r1 = {cx.y, cy.y, cz.y};
        m.r2 = {cx.z, cy.z, cz.z};
    }
    for (const auto& loop : loops)
        for (const auto& p : loop)
            if (std::fabs(m.apply(p).z) > coplanar_tol)
                throw NonPlanarFace("face is not planar within tolerance");
    return m;
}

// Intersection of a mapped face with the z=0 plane, as 2D segments: edges
// lying in the plane contribute themselves; transversal boundary crossings
// are sorted along the intersection line and paired alternately.  A lone
// point left by tangency is dropped.
inline std::vector<Segment> slice_face(const FaceLoops& mapped, double eps,
                                       double z_tol = 1e-9) {
    auto zsign = [&](const Vec3& p) { return std::fabs(p.z) <= z_tol ? 0 : (p.z > 0 ? 1 : -1); };

    bool all_on_plane = true;
    for (const auto& loop : mapped)
        for (const auto& p : loop)
            if (zsign(p) != 0) all_on_plane = false;
    std::vector<Segment> out;
    if (all_on_plane) {
        for (const auto& loop : mapped)
            for (size_t i = 0; i < loop.size(); ++i) {
                Vec2 a = loop[i].xy(), b = loop[(i + 1) % loop.size()].xy();
                if (!(a == b)) out.push_back({a, b});
            }
        return out;
    }

    std::vector<Vec2> events;
    for (const auto& loop : mapped) {
        const size_t k = loop.size();
        for (size_t i = 0; i < k; ++i) {
            const Vec3 &p = loop[i], &q = loop[(i + 1) % k];
            int sp = zsign(p), sq = zsign(q);
            if (sp == 0 && sq == 0) {
                // edge inside the plane
                if (!(p.xy() == q.xy())) out.push_back({p.xy(), q.xy()});
            } else if (sp * sq < 0) {
                double t = p.z / (p.z - q.z);
                Vec3 x = p + (q - p) * t;
                events.push_back(x.xy());
            } else if (sp == 0) {
                // vertex on the plane: crossing iff strict signs differ around it
                int prev = 0;
                for (size_t back = 1; back <= k && prev == 0; ++back)
                    prev = zsign(loop[(i + k - back) % k]);
                if (prev != 0 && sq != 0 && prev != sq) events.push_back(p.xy());
            }
        }
    }
    if (events.size() < 2) return out;

    // sort along the intersection line and pair alternately
    Vec3 n3 = face_normal(mapped);
    Vec2 dir{-n3.y, n3.x};  // cross(n, z) projected; nonzero since not coplanar
    double dn = norm(dir);
    if (dn == 0.0) return out;
    dir = dir * (1.0 / dn);
    std::sort(events.begin(), events.end(), [&](Vec2 a, Vec2 b) {
        double ta = dot(a, dir), tb = dot(b, dir);
        return ta < tb || (ta == tb && (a.x < b.x || (a.x == b.x && a.y < b.y)));
    });
    std::vector<Vec2> dedup;
    for (const Vec2& e : events) {
        if (!dedup.empty() && norm(e - dedup.back()) <= eps) continue;
        dedup.push_back(e);
    }
    for (size_t i = 0; i + 1 < dedup.size(); i += 2) out.push_back({dedup[i], dedup[i + 1]});
    return out;
}

// Local chain complex of one fragmented face, mapped back to 3-space.
struct LocalFragment {
    GeometricComplex complex;              // dim 3: V, EV, FV of the fragments
    std::vector<SignedChain> face_cycles;  // over the local edge basis
    int source_face = -1;
};

struct FragmentOptions {
    double eps = 1e-8;        // 2D snap tolerance (absolute)
    double z_tol = 1e-9;      // plane membership tolerance
    double coplanar_tol = 1e-9;
};

inline LocalFragment fragment_face(int sigma, const std::vector<FaceLoops>& faces,
                                   const std::vector<Box3>& boxes, const SpatialIndex& index,
                                   const FragmentOptions& opt = {}) {
    AffineMap q = submanifold_map(faces[sigma], opt.coplanar_tol);

    auto map_loops = [&](const FaceLoops& loops) {
        FaceLoops out;
        for (const auto& loop : loops) {
            std::vector<Vec3> m;
            for (const auto& p : loop) m.push_back(q.apply(p));
            out.push_back(std::move(m));
        }
        return out;
    };

    FaceLoops sigma_local = map_loops(faces[sigma]);
    std::vector<Segment> segments;
    std::vector<std::pair<Vec2, Vec2>> sigma_edges;
    for (const auto& loop : sigma_local)
        for (size_t i = 0; i < loop.size(); ++i) {
            Vec2 a = loop[i].xy(), b = loop[(i + 1) % loop.size()].xy();
            if (a == b) continue;
            segments.push_back({a, b});
            sigma_edges.push_back({a, b});
        }

    for (int tau : potential_intersections(sigma, boxes, index)) {
        FaceLoops tau_local = map_loops(faces[tau]);
        auto cut = slice_face(tau_local, opt.eps, opt.z_tol);
        segments.insert(segments.end(), cut.begin(), cut.end());
    }

    PlanarComplexBuild local = arrangement2d_build(segments, opt.eps);
    const GeometricComplex& cx = local.result.complex;

    // keep the 2-cells lying inside |sigma|
    std::vector<int> kept_faces;
    for (size_t f = 0; f < local.face_cycles.size(); ++f) {
        Vec2 p = face_interior_point(local.face_cycles[f], cx);
        if (locate_point(p, sigma_edges) == PointLocation::inside)
            kept_faces.push_back(static_cast<int>(f));
    }
    if (kept_faces.empty())
        throw EmptyArrangement("face " + std::to_string(sigma) + " produced no fragments");

    // compact to the cells' closure and map back to 3-space
    std::set<int> edge_set;
    for (int f : kept_faces)
        for (int e : local.face_cycles[f].support()) edge_set.insert(e);
    std::map<int, int> edge_map, vert_map;
    LocalFragment frag;
    frag.source_face = sigma;
    frag.complex.dim = 3;
    std::map<int, int> edge_sign;  // -1 when the stored direction flips under the remap
    for (int e : edge_set) {
        for (int v : cx.EV[e])
            if (!vert_map.count(v)) {
                vert_map[v] = static_cast<int>(frag.complex.V.size());
                frag.complex.V.push_back(q.inverse({cx.V[v].x, cx.V[v].y, 0.0}));
            }
        edge_map[e] = static_cast<int>(frag.complex.EV.size());
        int a = vert_map[cx.EV[e][0]], b = vert_map[cx.EV[e][1]];
        edge_sign[e] = a < b ? 1 : -1;
        frag.complex.EV.push_back({std::min(a, b), std::max(a, b)});
    }
    for (int f : kept_faces) {
        SignedChain cyc(2, static_cast<int>(frag.complex.EV.size()));
        std::set<int> fverts;
        for (auto [e, s] : local.face_cycles[f].entries()) {
            cyc.set(edge_map[e], s * edge_sign[e]);
            fverts.insert(frag.complex.EV[edge_map[e]].begin(),
                          frag.complex.EV[edge_map[e]].end());
        }
        frag.face_cycles.push_back(std::move(cyc));
        frag.complex.FV.push_back({fverts.begin(), fverts.end()});
    }
    return frag;
}

}  // namespace arrange
