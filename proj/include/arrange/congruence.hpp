// Quotient of fragmented local complexes by the congruence relations:
// nearby-coincident vertices collapse to cluster centroids, congruent cells
// identify by canonical form, and the glued boundary operators are rebuilt.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"
#include "arrange/fragment.hpp"
#include "arrange/lar.hpp"
#include "arrange/spatial.hpp"

namespace arrange {

struct QuotientMap {
    std::vector<int> vertex_offset, edge_offset, face_offset;  // per input fragment
    std::vector<int> vertex_map, edge_map, face_map;           // concatenated old -> new
    int n_vertices = 0, n_edges = 0, n_faces = 0;
};

struct QuotientResult {
    GeometricComplex complex;              // glued V, EV, FV
    SignedOperator d1, d2;
    std::vector<SignedChain> face_cycles;  // d2 columns, FV-aligned
    QuotientMap map;
};

inline QuotientResult quotient_complex(const std::vector<LocalFragment>& fragments, double eps) {
    if (eps <= 0.0) throw ValidationError("congruence tolerance must be positive");

    QuotientResult out;
    QuotientMap& qm = out.map;

    // ---- vertices: kd-tree clustering, representative = centroid ----
    std::vector<Vec3> pool;
    for (const auto& f : fragments) {
        qm.vertex_offset.push_back(static_cast<int>(pool.size()));
        pool.insert(pool.end(), f.complex.V.begin(), f.complex.V.end());
    }
    std::vector<Vec3> centroids;
    qm.vertex_map = cluster_points(pool, eps, &centroids);
    qm.n_vertices = static_cast<int>(centroids.size());

    {
        std::vector<Box3> cluster_box(centroids.size());
        for (size_t i = 0; i < pool.size(); ++i) cluster_box[qm.vertex_map[i]].expand(pool[i]);
        for (const auto& b : cluster_box)
            if (b.diagonal() > 2.0 * eps)
                throw ToleranceCollision("vertex cluster spans more than twice the tolerance");
        KdTree reps(centroids);
        for (size_t i = 0; i < centroids.size(); ++i)
            for (int j : reps.ball_query(centroids[i], eps * 0.999))
                if (j != static_cast<int>(i))
                    throw ToleranceCollision("identified vertices remain within tolerance");
    }
    out.complex.dim = fragments.empty() ? 3 : fragments.front().complex.dim;
    out.complex.V = centroids;

    // ---- edges: canonical vertex pairs ----
    struct OldEdge {
        int a, b;   // new vertex ids, a < b
        int sign;   // -1 when the stored direction flipped under the vertex map
    };
    std::vector<OldEdge> old_edges;
    std::map<std::array<int, 2>, int> edge_id;
    for (size_t fi = 0; fi < fragments.size(); ++fi) {
        const auto& f = fragments[fi];
        qm.edge_offset.push_back(static_cast<int>(old_edges.size()));
        int voff = qm.vertex_offset[fi];
        for (const auto& ev : f.complex.EV) {
            int va = qm.vertex_map[voff + ev[0]];
            int vb = qm.vertex_map[voff + ev[1]];
            if (va == vb)
                throw ToleranceCollision("edge collapsed by vertex identification");
            OldEdge oe{std::min(va, vb), std::max(va, vb), va < vb ? 1 : -1};
            edge_id[{oe.a, oe.b}] = 0;
            old_edges.push_back(oe);
        }
    }
    {
        int next = 0;
        for (auto& [key, id] : edge_id) id = next++;  // lexicographic edge order
        qm.n_edges = next;
    }
    qm.edge_map.reserve(old_edges.size());
    for (const auto& oe : old_edges) qm.edge_map.push_back(edge_id.at({oe.a, oe.b}));
    out.complex.EV.resize(qm.n_edges);
    for (const auto& [key, id] : edge_id) out.complex.EV[id] = {key[0], key[1]};

    // ---- faces: canonical identification by the sorted edge support of the
    // 1-cycle; on a clash the fragment from the lower source face wins ----
    std::map<std::vector<int>, int> face_id;
    int old_face_counter = 0;
    for (size_t fi = 0; fi < fragments.size(); ++fi) {
        const auto& f = fragments[fi];
        qm.face_offset.push_back(old_face_counter);
        int eoff = qm.edge_offset[fi];
        for (const auto& cyc : f.face_cycles) {
            std::map<int, int> acc;
            for (auto [le, s] : cyc.entries()) {
                int ge = qm.edge_map[eoff + le];
                acc[ge] += s * old_edges[eoff + le].sign;
            }
            SignedChain mapped(2, qm.n_edges);
            for (auto [ge, v] : acc) {
                if (v == 0) continue;
                if (v < -1 || v > 1)
                    throw ToleranceCollision("face cycle degenerated under identification");
                mapped.set(ge, v);
            }
            if (mapped.is_zero())
                throw ToleranceCollision("face collapsed by identification");
            // canonical orientation: the lowest-index edge keeps its stored direction
            if (mapped.entries().front().second < 0) mapped = -mapped;

            std::vector<int> key = mapped.support();
            auto it = face_id.find(key);
            int id;
            if (it == face_id.end()) {
                id = static_cast<int>(out.face_cycles.size());
                face_id.emplace(std::move(key), id);
                out.face_cycles.push_back(std::move(mapped));
            } else {
                id = it->second;
            }
            qm.face_map.push_back(id);
            old_face_counter += 1;
        }
    }
    qm.n_faces = static_cast<int>(out.face_cycles.size());

    for (const auto& cyc : out.face_cycles) {
        std::set<int> vs;
        for (int e : cyc.support())
            vs.insert(out.complex.EV[e].begin(), out.complex.EV[e].end());
        out.complex.FV.push_back({vs.begin(), vs.end()});
    }

    out.d1 = signed_boundary_1(out.complex.EV, qm.n_vertices);
    out.d2 = SignedOperator::from_columns(qm.n_edges, out.face_cycles);
    for (const auto& cyc : out.face_cycles)
        if (!out.d1.apply(cyc).is_zero())
            throw NonManifoldInput("glued face cycle is not closed");
    return out;
}

}  // namespace arrange
