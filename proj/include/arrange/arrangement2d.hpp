// The 2D pipeline: segments -> snapped planar graph -> per-biconnected-
// component TGW -> shell assembly -> full chain complex of the plane
// arrangement.  Also used, restricted to a face support, by the 3D
// fragmentation stage.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"
#include "arrange/geometry.hpp"
#include "arrange/lar.hpp"
#include "arrange/planar.hpp"
#include "arrange/shells.hpp"
#include "arrange/tgw.hpp"

namespace arrange {

// A point strictly inside the 2-cell bounded by `cycle` (support may include
// merged hole loops).  Probes sideways from the lowest-index edge midpoint.
inline Vec2 face_interior_point(const SignedChain& cycle, const GeometricComplex& cx) {
    if (cycle.is_zero()) throw DegenerateGeometry("empty cycle has no interior");
    std::vector<std::pair<Vec2, Vec2>> edges;
    for (const auto& ent : cycle.entries()) {
        const auto& e = cx.EV[ent.first];
        edges.push_back({cx.V[e[0]].xy(), cx.V[e[1]].xy()});
    }
    const auto& [a, b] = edges.front();
    Vec2 m = (a + b) * 0.5;
    Vec2 t = b - a;
    double len = norm(t);
    if (len == 0.0) throw DegenerateGeometry("zero-length edge in cycle");
    Vec2 n{-t.y / len, t.x / len};

    double min_d2 = std::numeric_limits<double>::max();
    for (size_t k = 1; k < edges.size(); ++k)
        min_d2 = std::min(min_d2, point_segment_dist2(m, edges[k].first, edges[k].second));
    double delta = min_d2 == std::numeric_limits<double>::max() ? len * 0.25
                                                                : 0.5 * std::sqrt(min_d2);
    if (delta == 0.0) throw DegenerateGeometry("coincident edges in cycle");

    for (double side : {1.0, -1.0}) {
        Vec2 probe = m + n * (side * delta);
        if (locate_point(probe, edges) == PointLocation::inside) return probe;
    }
    throw DegenerateGeometry("cannot locate cycle interior");
}

struct PlanarComplexBuild {
    ChainComplexResult result;
    std::vector<SignedChain> face_cycles;        // columns of [d2], FV-aligned
    std::vector<SignedChain> root_shells;        // boundary of the outer cell
    std::vector<std::pair<long, long>> eq1;      // per component: (nnz of [d2+], 2 #cells)
    std::vector<int> hole_pairs_removed;         // per component
};

// Chain complex of an already intersected/snapped planar graph.
inline PlanarComplexBuild build_planar_complex(const PlanarGraph& g, double eps) {
    auto groups = biconnected_edge_groups(static_cast<int>(g.V.size()), g.EV);
    std::erase_if(groups, [](const auto& gr) { return gr.size() < 2; });
    if (groups.empty()) throw EmptyArrangement("no 2-cell is formed by the input");

    // compact vertices and edges to the regular part
    std::vector<int> vmap(g.V.size(), -1);
    std::vector<int> emap(g.EV.size(), -1);
    PlanarComplexBuild out;
    GeometricComplex& cx = out.result.complex;
    cx.dim = 2;

    std::vector<int> kept_edges;
    for (const auto& gr : groups) kept_edges.insert(kept_edges.end(), gr.begin(), gr.end());
    std::sort(kept_edges.begin(), kept_edges.end());
    for (int e : kept_edges)
        for (int v : g.EV[e])
            if (vmap[v] == -1) {
                vmap[v] = static_cast<int>(cx.V.size());
                cx.V.push_back({g.V[v].x, g.V[v].y, 0.0});
            }
    // canonical edge order: sorted vertex pairs, lexicographic
    std::vector<std::pair<std::array<int, 2>, int>> evs;
    for (int e : kept_edges) {
        int a = vmap[g.EV[e][0]], b = vmap[g.EV[e][1]];
        evs.push_back({{std::min(a, b), std::max(a, b)}, e});
    }
    std::sort(evs.begin(), evs.end());
    for (size_t k = 0; k < evs.size(); ++k) {
        emap[evs[k].second] = static_cast<int>(k);
        cx.EV.push_back({evs[k].first[0], evs[k].first[1]});
    }

    SignedOperator d1 = signed_boundary_1(cx.EV, cx.vertex_count());
    MeasureContext ctx{&cx, &d1, &cx.EV, eps};

    std::vector<ComponentCells> components;
    std::vector<ShellInfo> shells;
    for (const auto& gr : groups) {
        std::vector<int> cells;
        for (int e : gr) cells.push_back(emap[e]);
        auto comp = make_component(d1, cells);

        std::map<int, int> local_of;
        for (size_t l = 0; l < comp.cells.size(); ++l) local_of[comp.cells[l]] = static_cast<int>(l);
        OrderFn order = [&](int hinge_local, const std::vector<int>& incident_local) {
            std::vector<int> inc;
            for (int l : incident_local) inc.push_back(comp.cells[l]);
            CyclicOrder go = cyclic_order_2d(comp.hinges[hinge_local], inc, cx);
            CyclicOrder lo;
            lo.hinge = hinge_local;
            for (int cell : go.ring) lo.ring.push_back(local_of.at(cell));
            return lo;
        };

        SignedOperator d2p = tgw(comp.boundary, order);
        out.eq1.push_back({d2p.nnz(), 2L * comp.boundary.cols()});

        // lift the augmented columns to the global edge basis
        std::vector<SignedChain> lifted;
        for (int j = 0; j < d2p.cols(); ++j) {
            SignedChain lc(2, static_cast<int>(cx.EV.size()));
            SignedChain col = d2p.column(j);
            for (auto [l, s] : col.entries()) lc.set(comp.cells[l], s);
            lifted.push_back(std::move(lc));
        }
        SplitResult split = split_outer(SignedOperator::from_columns(static_cast<int>(cx.EV.size()), lifted), ctx);
        int comp_id = static_cast<int>(components.size());
        shells.push_back({split.outer, comp_id});

        ComponentCells cc{std::move(split.inner), std::move(split.inner_measures)};

        // zero-sum pairs left in the component are interior holes
        int removed = 0;
        auto pairs = detect_hole_pairs(SignedOperator::from_columns(static_cast<int>(cx.EV.size()), cc.columns));
        std::vector<bool> drop(cc.columns.size(), false);
        for (auto [i, j] : pairs) {
            int neg = cc.measures[i] < cc.measures[j] ? i : j;
            drop[neg] = true;
            shells.push_back({cc.columns[neg], comp_id});
            removed += 1;
        }
        if (removed > 0) {
            ComponentCells kept;
            for (size_t j = 0; j < cc.columns.size(); ++j)
                if (!drop[j]) {
                    kept.columns.push_back(cc.columns[j]);
                    kept.measures.push_back(cc.measures[j]);
                }
            cc = std::move(kept);
        }
        out.hole_pairs_removed.push_back(removed);
        components.push_back(std::move(cc));
    }

    Assembled made = assemble(std::move(components), shells, ctx);
    cx.FV = made.top_cells;
    out.result.dim = 2;
    out.result.boundary = {std::move(d1), std::move(made.d_top)};
    out.face_cycles.clear();
    for (int j = 0; j < out.result.boundary[1].cols(); ++j)
        out.face_cycles.push_back(out.result.boundary[1].column(j, 2));
    out.root_shells = std::move(made.root_shells);
    return out;
}

// Full 2D arrangement of a segment set.
inline PlanarComplexBuild arrangement2d_build(const std::vector<Segment>& segments, double eps,
                                              PairSearch search = PairSearch::interval_tree) {
    SegmentSet cleaned = validate_segments(segments);
    PlanarGraph g = intersect_segments(cleaned.segments, eps, search);
    return build_planar_complex(g, eps);
}

inline ChainComplexResult arrangement2d(const std::vector<Segment>& segments, double eps,
                                        PairSearch search = PairSearch::interval_tree) {
    return arrangement2d_build(segments, eps, search).result;
}

}  // namespace arrange
