// Shell handling around the per-component TGW runs: connected-component
// decomposition, outer-cycle splitting, zero-sum hole pairs, the containment
// forest over shells, and assembly of the global top-dimension operator.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"
#include "arrange/geometry.hpp"
#include "arrange/lar.hpp"
#include "arrange/spatial.hpp"
#include "arrange/tgw.hpp"

namespace arrange {

// Everything a geometric shell query needs: the embedding, the boundary
// operator one grade below the shells, and the vertex supports of the
// (d-1)-cells the shells are written over.
struct MeasureContext {
    const GeometricComplex* complex = nullptr;
    const SignedOperator* face_boundary = nullptr;          // [d1] for d=2, [d2] for d=3
    const std::vector<CanonicalCell>* cell_vertices = nullptr;  // EV for d=2, FV for d=3
    double eps = 1e-9;

    double measure(const SignedChain& cycle) const {
        return signed_measure(cycle, *complex, *face_boundary);
    }
};

inline std::vector<int> shell_vertices(const SignedChain& shell,
                                       const std::vector<CanonicalCell>& cell_vertices) {
    std::set<int> vs;
    for (const auto& ent : shell.entries())
        vs.insert(cell_vertices[ent.first].begin(), cell_vertices[ent.first].end());
    return {vs.begin(), vs.end()};
}

// ---------------------------------------------------------------------------
// Connected components of the (d-1)-skeleton.
// ---------------------------------------------------------------------------

struct ComponentDecomposition {
    struct Component {
        std::vector<int> cells;   // global (d-1)-cell ids, ascending
        std::vector<int> hinges;  // global (d-2)-cell ids, ascending
        SignedOperator boundary;  // locally reindexed [d_{d-1}]^p
    };
    std::vector<Component> components;
};

inline ComponentDecomposition::Component make_component(const SignedOperator& boundary,
                                                        std::vector<int> cell_ids) {
    ComponentDecomposition::Component comp;
    std::sort(cell_ids.begin(), cell_ids.end());
    comp.cells = std::move(cell_ids);
    std::set<int> hinge_set;
    for (int c : comp.cells)
        for (int h : boundary.column_support(c)) hinge_set.insert(h);
    comp.hinges.assign(hinge_set.begin(), hinge_set.end());

    std::map<int, int> hinge_local;
    for (size_t k = 0; k < comp.hinges.size(); ++k) hinge_local[comp.hinges[k]] = static_cast<int>(k);
    std::vector<std::array<int, 3>> triples;
    for (size_t j = 0; j < comp.cells.size(); ++j) {
        SignedChain col = boundary.column(comp.cells[j]);
        for (auto [i, v] : col.entries())
            triples.push_back({hinge_local[i], static_cast<int>(j), v});
    }
    comp.boundary = SignedOperator::from_triples(static_cast<int>(comp.hinges.size()),
                                                 static_cast<int>(comp.cells.size()), triples);
    return comp;
}

// Maximal point-connected components of the bipartite incidence graph with
// one node per (d-1)-cell and one node per 0-cell.
inline ComponentDecomposition split_components(const SignedOperator& boundary,
                                               const std::vector<CanonicalCell>& cell_vertices) {
    const int n = static_cast<int>(cell_vertices.size());
    if (boundary.cols() != n)
        throw DimensionMismatch("operator inconsistent with cell list");
    int n_verts = 0;
    for (const auto& c : cell_vertices)
        for (int v : c) n_verts = std::max(n_verts, v + 1);

    UnionFind uf(n);
    std::vector<int> first_cell_at(n_verts, -1);
    for (int c = 0; c < n; ++c)
        for (int v : cell_vertices[c]) {
            if (first_cell_at[v] == -1) first_cell_at[v] = c;
            else uf.unite(first_cell_at[v], c);
        }

    std::map<int, std::vector<int>> groups;
    for (int c = 0; c < n; ++c) groups[uf.find(c)].push_back(c);

    ComponentDecomposition out;
    for (auto& [root, cells] : groups) out.components.push_back(make_component(boundary, cells));
    std::sort(out.components.begin(), out.components.end(),
              [](const auto& a, const auto& b) { return a.cells.front() < b.cells.front(); });
    return out;
}

// ---------------------------------------------------------------------------
// Hole pairs: pairs of columns with zero sum.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<int, int>> detect_hole_pairs(const SignedOperator& m) {
    // canonical key: entry list with the leading coefficient normalized to +1
    std::map<std::vector<std::pair<int, int>>, std::array<std::vector<int>, 2>> table;
    for (int j = 0; j < m.cols(); ++j) {
        SignedChain col = m.column(j);
        if (col.is_zero()) continue;
        std::vector<std::pair<int, int>> key = col.entries();
        int lead = key.front().second;
        if (lead < 0)
            for (auto& e : key) e.second = -e.second;
        table[key][lead > 0 ? 0 : 1].push_back(j);
    }
    std::vector<std::pair<int, int>> pairs;
    for (auto& [key, buckets] : table) {
        size_t k = std::min(buckets[0].size(), buckets[1].size());
        for (size_t i = 0; i < k; ++i) {
            int a = buckets[0][i], b = buckets[1][i];
            pairs.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

// ---------------------------------------------------------------------------
// Outer-cycle split.
// ---------------------------------------------------------------------------

struct SplitResult {
    SignedChain outer;                  // the unbounded cell's cycle, oriented inward
    std::vector<SignedChain> inner;     // remaining columns, over the same basis
    std::vector<double> inner_measures;
    double outer_measure = 0.0;         // always negative
};

// The outer cycle encloses the whole component, so its absolute measure is
// maximal; the extraction may have produced it with either global sign, and
// the returned shell is normalized to the inward (negative) orientation.
// Ties (a lone cell and its negation, or pinched twins) are broken by the
// extreme vertex and then by preferring the negative candidate.
inline SplitResult split_outer(const SignedOperator& d_plus, const MeasureContext& ctx) {
    if (d_plus.cols() == 0) throw EmptyArrangement("no cycles to split");
    std::vector<double> measures(d_plus.cols());
    double best = 0.0;
    for (int j = 0; j < d_plus.cols(); ++j) {
        measures[j] = ctx.measure(d_plus.column(j));
        best = std::max(best, std::fabs(measures[j]));
    }
    double tol = best * 1e-9;

    std::vector<int> candidates;
    for (int j = 0; j < d_plus.cols(); ++j)
        if (std::fabs(measures[j]) >= best - tol) candidates.push_back(j);

    if (candidates.size() > 1) {
        // keep the candidates holding the lexicographically extreme vertex
        int extreme = -1;
        std::vector<std::vector<int>> supports;
        for (int j : candidates) supports.push_back(shell_vertices(d_plus.column(j), *ctx.cell_vertices));
        for (const auto& vs : supports)
            for (int v : vs) {
                if (extreme == -1) { extreme = v; continue; }
                const Vec3 &p = ctx.complex->V[v], &q = ctx.complex->V[extreme];
                if (std::tie(p.x, p.y, p.z) > std::tie(q.x, q.y, q.z)) extreme = v;
            }
        std::vector<int> holders;
        for (size_t k = 0; k < candidates.size(); ++k)
            if (std::binary_search(supports[k].begin(), supports[k].end(), extreme))
                holders.push_back(candidates[k]);
        if (!holders.empty()) candidates = holders;
    }
    if (candidates.size() > 1) {
        std::vector<int> negatives;
        for (int j : candidates)
            if (measures[j] < 0.0) negatives.push_back(j);
        if (!negatives.empty()) candidates = negatives;
    }
    if (candidates.size() != 1)
        throw AmbiguousOuter("outer-cycle candidates cannot be separated");
    int outer = candidates.front();

    SplitResult out;
    out.outer = measures[outer] < 0.0 ? d_plus.column(outer) : -d_plus.column(outer);
    out.outer_measure = -std::fabs(measures[outer]);
    for (int j = 0; j < d_plus.cols(); ++j) {
        if (j == outer) continue;
        out.inner.push_back(d_plus.column(j));
        out.inner_measures.push_back(measures[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Point-in-cycle containment tests.
// ---------------------------------------------------------------------------

namespace detail {

inline const std::array<Vec3, 8>& ray_directions() {
    static const std::array<Vec3, 8> dirs = [] {
        std::array<Vec3, 8> d{};
        for (int k = 0; k < 8; ++k) {
            double a = 0.7391 + 0.6173 * k;
            double b = 0.3319 + 0.4421 * k;
            d[k] = normalized(Vec3{std::cos(a) * std::cos(b), std::sin(a) * std::cos(b),
                                   0.4331 + 0.0917 * k});
        }
        return d;
    }();
    return dirs;
}

}  // namespace detail

// True iff p lies in the bounded region enclosed by the (d-1)-cycle c.
// Throws PointOnBoundary when p lies on the support of c.
inline bool point_in_cycle(Vec3 p, const SignedChain& cycle, const MeasureContext& ctx) {
    const GeometricComplex& cx = *ctx.complex;
    if (cx.dim == 2) {
        std::vector<std::pair<Vec2, Vec2>> edges;
        for (const auto& ent : cycle.entries()) {
            const auto& e = cx.EV[ent.first];
            edges.push_back({cx.V[e[0]].xy(), cx.V[e[1]].xy()});
        }
        PointLocation loc = locate_point(p.xy(), edges);
        if (loc == PointLocation::boundary) throw PointOnBoundary("point lies on the cycle");
        return loc == PointLocation::inside;
    }

    // 3D: ray-crossing parity face by face.
    std::vector<detail::FacePlane> planes;
    planes.reserve(cycle.size());
    for (const auto& ent : cycle.entries())
        planes.push_back(detail::face_plane(ctx.face_boundary->column(ent.first, 2), cx));

    for (const auto& fp : planes) {
        double dist = dot(p - fp.origin, fp.normal);
        if (std::fabs(dist) <= ctx.eps) {
            Vec2 q = fp.project(p);
            PointLocation loc = locate_point(q, fp.edges2d);
            if (loc != PointLocation::outside) throw PointOnBoundary("point lies on the cycle");
        }
    }

    for (const Vec3& dir : detail::ray_directions()) {
        int crossings = 0;
        bool clean = true;
        for (const auto& fp : planes) {
            double denom = dot(dir, fp.normal);
            double height = dot(fp.origin - p, fp.normal);
            if (std::fabs(denom) < 1e-12) {
                if (std::fabs(height) < ctx.eps) { clean = false; break; }
                continue;
            }
            double t = height / denom;
            if (t <= 0.0) continue;
            Vec3 hit = p + dir * t;
            Vec2 q = fp.project(hit);
            PointLocation loc = locate_point(q, fp.edges2d);
            if (loc == PointLocation::boundary) { clean = false; break; }
            if (loc == PointLocation::inside) crossings += 1;
        }
        if (clean) return crossings % 2 == 1;
    }
    throw DegenerateGeometry("no clean ray direction for containment test");
}

// ---------------------------------------------------------------------------
// Containment forest.
// ---------------------------------------------------------------------------

struct ShellForest {
    std::vector<int> parent;                      // -1 for roots
    std::vector<int> depth;                       // root depth 0
    std::vector<std::pair<int, int>> arcs;        // (container, contained), reduced
    std::vector<std::pair<int, int>> pruned_arcs; // arcs whose child depth is odd
};

namespace detail {

// A vertex of shell a that does not lie on shell b, as a containment probe.
inline bool shell_inside(const SignedChain& a, const SignedChain& b, const MeasureContext& ctx) {
    for (int v : shell_vertices(a, *ctx.cell_vertices)) {
        try {
            return point_in_cycle(ctx.complex->V[v], b, ctx);
        } catch (const PointOnBoundary&) {
            continue;
        }
    }
    throw DegenerateGeometry("no usable probe vertex between shells");
}

}  // namespace detail

inline ShellForest containment_forest(const std::vector<SignedChain>& shells,
                                      const MeasureContext& ctx) {
    const int h = static_cast<int>(shells.size());
    std::vector<double> absm(h);
    std::vector<Box3> boxes(h);
    for (int i = 0; i < h; ++i) {
        absm[i] = std::fabs(ctx.measure(shells[i]));
        for (int v : shell_vertices(shells[i], *ctx.cell_vertices)) boxes[i].expand(ctx.complex->V[v]);
    }

    ShellForest f;
    f.parent.assign(h, -1);
    f.depth.assign(h, 0);
    for (int i = 0; i < h; ++i) {
        int best = -1;
        for (int j = 0; j < h; ++j) {
            if (i == j) continue;
            if (absm[j] <= absm[i]) continue;  // container must be strictly bigger
            if (!boxes[j].overlaps(boxes[i], ctx.eps)) continue;
            if (!detail::shell_inside(shells[i], shells[j], ctx)) continue;
            if (best == -1 || absm[j] < absm[best]) best = j;
        }
        f.parent[i] = best;  // immediate container == transitive reduction
    }
    for (int i = 0; i < h; ++i) {
        int d = 0;
        for (int p = f.parent[i]; p != -1; p = f.parent[p]) d += 1;
        f.depth[i] = d;
        if (f.parent[i] != -1) {
            f.arcs.push_back({f.parent[i], i});
            if (d % 2 == 1) f.pruned_arcs.push_back({f.parent[i], i});
        }
    }
    std::sort(f.arcs.begin(), f.arcs.end());
    std::sort(f.pruned_arcs.begin(), f.pruned_arcs.end());
    return f;
}

// ---------------------------------------------------------------------------
// Assembly of the global top-dimension operator.
// ---------------------------------------------------------------------------

struct ComponentCells {
    std::vector<SignedChain> columns;  // over the global (d-1) basis
    std::vector<double> measures;
};

struct ShellInfo {
    SignedChain cycle;  // negative-measure orientation, as produced by split/pairs
    int component = 0;
};

struct Assembled {
    SignedOperator d_top;                   // columns normalized to positive measure
    std::vector<CanonicalCell> top_cells;   // vertex supports of the d-cells
    std::vector<SignedChain> root_shells;   // boundary cycles of the unbounded cell
    ShellForest forest;
};

// Quasi-block-diagonal assembly: every non-root shell is merged, with the
// sign fixed by its container's orientation, into the container cell found
// in its parent's component; root shells bound the unique outer cell.
inline Assembled assemble(std::vector<ComponentCells> components,
                          const std::vector<ShellInfo>& shells, const MeasureContext& ctx) {
    std::vector<SignedChain> shell_cycles;
    for (const auto& s : shells) shell_cycles.push_back(s.cycle);

    Assembled out;
    out.forest = containment_forest(shell_cycles, ctx);

    // locate container cells against the pristine columns, then merge
    struct Merge {
        int component, column, shell;
    };
    std::vector<Merge> merges;
    for (int s = 0; s < static_cast<int>(shells.size()); ++s) {
        int p = out.forest.parent[s];
        if (p == -1) continue;
        int comp = shells[p].component;
        const auto& cols = components[comp].columns;

        std::vector<int> s_support = shells[s].cycle.support();
        std::vector<int> candidates;
        for (size_t j = 0; j < cols.size(); ++j) {
            std::vector<int> c_support = cols[j].support();
            std::vector<int> common;
            std::set_intersection(s_support.begin(), s_support.end(), c_support.begin(),
                                  c_support.end(), std::back_inserter(common));
            if (common.empty()) candidates.push_back(static_cast<int>(j));
        }

        int found = -1;
        for (int v : shell_vertices(shells[s].cycle, *ctx.cell_vertices)) {
            bool dirty = false;
            int best = -1;
            for (int j : candidates) {
                bool in;
                try {
                    in = point_in_cycle(ctx.complex->V[v], cols[j], ctx);
                } catch (const PointOnBoundary&) {
                    dirty = true;
                    break;
                }
                if (in && (best == -1 ||
                           std::fabs(components[comp].measures[j]) <
                               std::fabs(components[comp].measures[best])))
                    best = j;
            }
            if (!dirty) { found = best; break; }
        }
        if (found == -1)
            throw ContainerNotFound("no cell of the container component holds shell " +
                                    std::to_string(s));
        merges.push_back({comp, found, s});
    }

    for (const auto& m : merges) {
        auto& cc = components[m.component];
        double sign = cc.measures[m.column] >= 0.0 ? 1.0 : -1.0;
        const SignedChain& hole = shells[m.shell].cycle;
        cc.columns[m.column] =
            sign > 0 ? cc.columns[m.column] + hole : cc.columns[m.column] - hole;
        cc.measures[m.column] += sign * ctx.measure(hole);
    }

    int basis = static_cast<int>(ctx.cell_vertices->size());
    std::vector<SignedChain> final_cols;
    for (const auto& cc : components)
        for (size_t j = 0; j < cc.columns.size(); ++j)
            final_cols.push_back(cc.measures[j] < 0.0 ? -cc.columns[j] : cc.columns[j]);
    out.d_top = SignedOperator::from_columns(basis, final_cols);
    for (const auto& col : final_cols)
        out.top_cells.push_back(shell_vertices(col, *ctx.cell_vertices));
    for (int s = 0; s < static_cast<int>(shells.size()); ++s)
        if (out.forest.parent[s] == -1) out.root_shells.push_back(shells[s].cycle);
    return out;
}

}  // namespace arrange
