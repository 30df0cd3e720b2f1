// Independent oracles the implementation is checked against: dense integer
// matrix arithmetic, brute-force pairwise geometry, vertex-removal
// connectivity, and full-relation containment reduction.
#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/geometry.hpp"
#include "arrange/scenes.hpp"

namespace oracles {

using Dense = std::vector<std::vector<int>>;

inline Dense dense_of(const arrange::SignedOperator& m) {
    Dense d(m.rows(), std::vector<int>(m.cols(), 0));
    for (const auto& [i, j, v] : m.to_triples()) d[i][j] = v;
    return d;
}

inline Dense dense_of(const arrange::UnsignedMatrix& m) {
    Dense d(m.rows(), std::vector<int>(m.cols(), 0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j : m.row_support(i)) d[i][j] = 1;
    return d;
}

inline Dense dense_of(const arrange::IntegerMatrix& m) {
    Dense d(m.rows(), std::vector<int>(m.cols(), 0));
    for (int i = 0; i < m.rows(); ++i)
        for (int p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p)
            d[i][m.col_idx()[p]] = m.values()[p];
    return d;
}

// C = A * B^t over the integers.
inline Dense dense_product_bt(const Dense& a, const Dense& b) {
    Dense c(a.size(), std::vector<int>(b.size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            for (size_t k = 0; k < a[i].size(); ++k) c[i][j] += a[i][k] * b[j][k];
    return c;
}

inline std::vector<int> dense_apply(const Dense& a, const std::vector<int>& x) {
    std::vector<int> y(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < a[i].size(); ++k) y[i] += a[i][k] * x[k];
    return y;
}

inline std::vector<int> chain_to_dense(const arrange::SignedChain& c) {
    std::vector<int> x(c.basis_size(), 0);
    for (auto [i, v] : c.entries()) x[i] = v;
    return x;
}

// ---------------------------------------------------------------------------
// Graph brute force.
// ---------------------------------------------------------------------------

// Components among vertices that touch at least one original edge; the
// removed vertex drops out together with its incident edges.
inline int component_count(int n, const std::vector<std::array<int, 2>>& edges,
                           int removed_vertex = -1) {
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> present(n, false);
    for (const auto& e : edges)
        for (int v : e)
            if (v != removed_vertex) present[v] = true;
    for (const auto& e : edges) {
        if (e[0] == removed_vertex || e[1] == removed_vertex) continue;
        parent[find(e[0])] = find(e[1]);
    }
    std::set<int> roots;
    for (int v = 0; v < n; ++v)
        if (present[v]) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

// Articulation points by definition: removal increases the component count.
inline std::set<int> articulation_points_brute(int n,
                                               const std::vector<std::array<int, 2>>& edges) {
    int base = component_count(n, edges);
    std::set<int> out;
    for (int v = 0; v < n; ++v)
        if (component_count(n, edges, v) > base) out.insert(v);
    return out;
}

// True iff the edge lies on some cycle: both endpoints stay connected after
// removing the edge itself.
inline bool edge_on_cycle_brute(int n, const std::vector<std::array<int, 2>>& edges,
                                size_t which) {
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t e = 0; e < edges.size(); ++e) {
        if (e == which) continue;
        parent[find(edges[e][0])] = find(edges[e][1]);
    }
    return find(edges[which][0]) == find(edges[which][1]);
}

// 2-vertex-connectivity of an edge-induced subgraph, by definition.
inline bool biconnected_brute(const std::vector<std::array<int, 2>>& edges) {
    std::set<int> verts;
    for (const auto& e : edges) verts.insert(e.begin(), e.end());
    if (verts.size() < 3) return false;
    int n = *std::max_element(verts.begin(), verts.end()) + 1;
    if (component_count(n, edges) != 1) return false;
    for (int v : verts)
        if (component_count(n, edges, v) > 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Containment relation brute force: full relation, then transitive reduction
// R - R.R, then parity pruning.
// ---------------------------------------------------------------------------

struct ForestOracle {
    std::vector<std::pair<int, int>> reduced;  // (container, contained)
    std::vector<std::pair<int, int>> pruned;
    std::vector<int> depth;
};

inline ForestOracle reduce_containment(int h,
                                       const std::vector<std::pair<int, int>>& full_relation) {
    std::vector<std::vector<bool>> r(h, std::vector<bool>(h, false));
    for (auto [i, j] : full_relation) r[i][j] = true;  // i contains j
    std::vector<std::vector<bool>> red = r;
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            if (r[a][b])
                for (int c = 0; c < h; ++c)
                    if (r[b][c]) red[a][c] = false;
    ForestOracle out;
    out.depth.assign(h, 0);
    std::vector<int> parent(h, -1);
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            if (red[a][b]) {
                out.reduced.push_back({a, b});
                parent[b] = a;
            }
    for (int v = 0; v < h; ++v) {
        int d = 0;
        for (int p = parent[v]; p != -1; p = parent[p]) d += 1;
        out.depth[v] = d;
    }
    for (auto [a, b] : out.reduced)
        if (out.depth[b] % 2 == 1) out.pruned.push_back({a, b});
    std::sort(out.reduced.begin(), out.reduced.end());
    std::sort(out.pruned.begin(), out.pruned.end());
    return out;
}

}  // namespace oracles
