// Arrangement of line segments in the plane: robust pairwise intersection,
// snap rounding into a planar graph, and removal of dangling parts via
// maximal 2-vertex-connected components (Hopcroft-Tarjan).
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrange/errors.hpp"
#include "arrange/geometry.hpp"
#include "arrange/spatial.hpp"

namespace arrange {

struct Segment {
    Vec2 a, b;
};

struct SegmentSet {
    std::vector<Segment> segments;
    int dropped_zero_length = 0;
    int dropped_duplicates = 0;
};

// Drops zero-length segments and exact duplicates (orientation ignored).
inline SegmentSet validate_segments(const std::vector<Segment>& raw) {
    SegmentSet out;
    std::set<std::array<double, 4>> seen;
    for (const auto& s : raw) {
        if (s.a == s.b) {
            out.dropped_zero_length += 1;
            continue;
        }
        std::array<double, 4> key = s.a.x < s.b.x || (s.a.x == s.b.x && s.a.y < s.b.y)
                                        ? std::array<double, 4>{s.a.x, s.a.y, s.b.x, s.b.y}
                                        : std::array<double, 4>{s.b.x, s.b.y, s.a.x, s.a.y};
        if (!seen.insert(key).second) {
            out.dropped_duplicates += 1;
            continue;
        }
        out.segments.push_back(s);
    }
    return out;
}

struct PlanarGraph {
    std::vector<Vec2> V;
    std::vector<std::array<int, 2>> EV;  // canonical vertex pairs, a < b
};

enum class PairSearch { brute_force, interval_tree };

namespace detail {

struct SplitPoint {
    double t;
    Vec2 p;
};

inline double segment_param(const Segment& s, Vec2 p) {
    Vec2 d = s.b - s.a;
    if (std::fabs(d.x) >= std::fabs(d.y)) return d.x == 0.0 ? 0.0 : (p.x - s.a.x) / d.x;
    return (p.y - s.a.y) / d.y;
}

// Records mutual split points of segments i and j.  Proper crossings are
// classified exactly via the adaptive orientation test; endpoints within eps
// of the other segment weld to it, which keeps T-junctions and
// quasi-congruent duplicates from drifting apart after snapping.
inline void intersect_pair(const Segment& p, const Segment& q, double eps,
                           std::vector<SplitPoint>& sp, std::vector<SplitPoint>& sq) {
    int o1 = orient2d_sign(p.a, p.b, q.a);
    int o2 = orient2d_sign(p.a, p.b, q.b);
    int o3 = orient2d_sign(q.a, q.b, p.a);
    int o4 = orient2d_sign(q.a, q.b, p.b);

    if (o1 == 0 && o2 == 0) {
        // collinear: overlap endpoints become split points on the other segment
        auto add_interior = [](const Segment& s, Vec2 x, std::vector<SplitPoint>& dst) {
            if (x == s.a || x == s.b) return;
            double t = segment_param(s, x);
            if (t > 0.0 && t < 1.0) dst.push_back({t, x});
        };
        add_interior(p, q.a, sp);
        add_interior(p, q.b, sp);
        add_interior(q, p.a, sq);
        add_interior(q, p.b, sq);
        return;
    }
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        Vec2 dp = p.b - p.a;
        Vec2 dq = q.b - q.a;
        double den = cross(dp, dq);
        double t = cross(q.a - p.a, dq) / den;
        Vec2 x = p.a + dp * t;
        sp.push_back({t, x});
        sq.push_back({segment_param(q, x), x});
        return;
    }
    // endpoint on, or within eps of, the interior of the other segment
    auto add_touch = [eps](const Segment& s, Vec2 x, std::vector<SplitPoint>& dst) {
        if (norm(x - s.a) <= eps || norm(x - s.b) <= eps) return;
        if (point_segment_dist2(x, s.a, s.b) > eps * eps) return;
        dst.push_back({segment_param(s, x), x});
    };
    add_touch(p, q.a, sp);
    add_touch(p, q.b, sp);
    add_touch(q, p.a, sq);
    add_touch(q, p.b, sq);
}

}  // namespace detail

// Subdivides segments at all mutual intersections and snap-rounds vertices
// within eps to cluster centroids.  The interval-tree search and the
// brute-force search produce identical output by construction.
inline PlanarGraph intersect_segments(const std::vector<Segment>& segments, double eps,
                                      PairSearch search = PairSearch::interval_tree) {
    if (eps <= 0.0) throw ValidationError("snap tolerance must be positive");
    const int n = static_cast<int>(segments.size());
    std::vector<std::vector<detail::SplitPoint>> splits(n);

    auto handle_pair = [&](int i, int j) {
        detail::intersect_pair(segments[i], segments[j], eps, splits[i], splits[j]);
    };

    auto bbox_overlap = [&](int i, int j) {
        const Segment &p = segments[i], &q = segments[j];
        double plox = std::min(p.a.x, p.b.x) - eps, phix = std::max(p.a.x, p.b.x) + eps;
        double ploy = std::min(p.a.y, p.b.y) - eps, phiy = std::max(p.a.y, p.b.y) + eps;
        return std::min(q.a.x, q.b.x) <= phix && plox <= std::max(q.a.x, q.b.x) &&
               std::min(q.a.y, q.b.y) <= phiy && ploy <= std::max(q.a.y, q.b.y);
    };

    if (search == PairSearch::brute_force) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (bbox_overlap(i, j)) handle_pair(i, j);
    } else {
        std::vector<IntervalTree::Interval> xs, ys;
        xs.reserve(n);
        ys.reserve(n);
        for (int i = 0; i < n; ++i) {
            const Segment& s = segments[i];
            xs.push_back({std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x), i});
            ys.push_back({std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y), i});
        }
        IntervalTree tx(xs), ty(ys);
        for (int i = 0; i < n; ++i) {
            const Segment& s = segments[i];
            auto cx = tx.query(std::min(s.a.x, s.b.x) - eps, std::max(s.a.x, s.b.x) + eps);
            auto cy = ty.query(std::min(s.a.y, s.b.y) - eps, std::max(s.a.y, s.b.y) + eps);
            std::vector<int> cand;
            std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(),
                                  std::back_inserter(cand));
            for (int j : cand)
                if (j > i && bbox_overlap(i, j)) handle_pair(i, j);
        }
    }

    // Pool all endpoints and split points in a search-order independent
    // sequence, then cluster within eps.
    for (auto& s : splits)
        std::sort(s.begin(), s.end(), [](const detail::SplitPoint& a, const detail::SplitPoint& b) {
            return a.t < b.t || (a.t == b.t && (a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y)));
        });

    std::vector<Vec3> pool;
    std::vector<std::vector<std::pair<double, int>>> seg_points(n);  // (param, pool index)
    for (int i = 0; i < n; ++i) {
        seg_points[i].push_back({0.0, static_cast<int>(pool.size())});
        pool.push_back({segments[i].a.x, segments[i].a.y, 0.0});
        seg_points[i].push_back({1.0, static_cast<int>(pool.size())});
        pool.push_back({segments[i].b.x, segments[i].b.y, 0.0});
        for (const auto& sp : splits[i]) {
            seg_points[i].push_back({sp.t, static_cast<int>(pool.size())});
            pool.push_back({sp.p.x, sp.p.y, 0.0});
        }
    }

    std::vector<Vec3> centroids;
    std::vector<int> cluster_of = cluster_points(pool, eps, &centroids);

    std::set<std::array<int, 2>> edge_set;
    for (int i = 0; i < n; ++i) {
        auto& pts = seg_points[i];
        std::sort(pts.begin(), pts.end());
        for (size_t k = 0; k + 1 < pts.size(); ++k) {
            int a = cluster_of[pts[k].second];
            int b = cluster_of[pts[k + 1].second];
            if (a == b) continue;
            edge_set.insert({std::min(a, b), std::max(a, b)});
        }
    }

    // compact to used clusters, order preserved
    std::vector<int> remap(centroids.size(), -1);
    PlanarGraph g;
    for (const auto& e : edge_set)
        for (int v : {e[0], e[1]})
            if (remap[v] == -1) {
                remap[v] = -2;  // mark used
            }
    int next = 0;
    for (size_t c = 0; c < centroids.size(); ++c)
        if (remap[c] == -2) {
            remap[c] = next++;
            g.V.push_back(centroids[c].xy());
        }
    for (const auto& e : edge_set) {
        int a = remap[e[0]], b = remap[e[1]];
        g.EV.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(g.EV.begin(), g.EV.end());
    return g;
}

// ---------------------------------------------------------------------------
// Biconnected components (Hopcroft-Tarjan, iterative).
// ---------------------------------------------------------------------------

// Partitions edges into maximal 2-vertex-connected groups; bridges come out
// as single-edge groups.
inline std::vector<std::vector<int>> biconnected_edge_groups(
    int n_verts, const std::vector<std::array<int, 2>>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(n_verts);  // (to, edge id)
    for (size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e][0]].push_back({edges[e][1], static_cast<int>(e)});
        adj[edges[e][1]].push_back({edges[e][0], static_cast<int>(e)});
    }

    std::vector<int> disc(n_verts, -1), low(n_verts, -1);
    std::vector<std::vector<int>> groups;
    std::vector<int> edge_stack;
    int timer = 0;

    struct Frame {
        int v;
        int parent_edge;
        size_t ai;
    };

    for (int root = 0; root < n_verts; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.ai < adj[f.v].size()) {
                auto [to, e] = adj[f.v][f.ai++];
                if (e == f.parent_edge) continue;
                if (disc[to] == -1) {
                    edge_stack.push_back(e);
                    disc[to] = low[to] = timer++;
                    stack.push_back({to, e, 0});
                } else if (disc[to] < disc[f.v]) {
                    edge_stack.push_back(e);
                    low[f.v] = std::min(low[f.v], disc[to]);
                }
            } else {
                int v = f.v;
                int pe = f.parent_edge;
                stack.pop_back();
                if (stack.empty()) continue;
                Frame& pf = stack.back();
                low[pf.v] = std::min(low[pf.v], low[v]);
                if (low[v] >= disc[pf.v]) {
                    std::vector<int> group;
                    while (!edge_stack.empty()) {
                        int e = edge_stack.back();
                        edge_stack.pop_back();
                        group.push_back(e);
                        if (e == pe) break;
                    }
                    std::sort(group.begin(), group.end());
                    groups.push_back(std::move(group));
                }
            }
        }
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

// Maximal 2-vertex-connected subgraphs; dangling edges (bridges, pendant
// trees) are discarded.  Each component keeps its own compact vertex set.
inline std::vector<PlanarGraph> biconnected_filter(const PlanarGraph& g) {
    auto groups = biconnected_edge_groups(static_cast<int>(g.V.size()), g.EV);
    std::vector<PlanarGraph> out;
    for (const auto& group : groups) {
        if (group.size() < 2) continue;  // bridge
        PlanarGraph comp;
        std::map<int, int> remap;
        for (int e : group) {
            for (int v : g.EV[e])
                if (!remap.count(v)) {
                    remap[v] = static_cast<int>(comp.V.size());
                    comp.V.push_back(g.V[v]);
                }
            int a = remap[g.EV[e][0]], b = remap[g.EV[e][1]];
            comp.EV.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(comp.EV.begin(), comp.EV.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Point location against a set of edges (crossing parity).
// ---------------------------------------------------------------------------

enum class PointLocation { inside, outside, boundary };

inline PointLocation locate_point(Vec2 p, const std::vector<std::pair<Vec2, Vec2>>& edges) {
    int crossings = 0;
    for (const auto& [a, b] : edges) {
        if (point_on_segment(p, a, b)) return PointLocation::boundary;
        bool up = a.y <= p.y && b.y > p.y;
        bool down = b.y <= p.y && a.y > p.y;
        if (!up && !down) continue;
        double o = orient2d(a, b, p);
        if ((up && o > 0.0) || (down && o < 0.0)) crossings += 1;
    }
    return (crossings % 2 == 1) ? PointLocation::inside : PointLocation::outside;
}

}  // namespace arrange
