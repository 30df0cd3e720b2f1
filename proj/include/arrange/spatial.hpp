// Spatial acceleration structures: union-find, a static kd-tree for
// nearest/range queries, and a static 1D interval tree.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "arrange/geometry.hpp"

namespace arrange {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) rank_[a] += 1;
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

// Static 3D kd-tree over a point set (works for planar data with z = 0).
class KdTree {
public:
    explicit KdTree(const std::vector<Vec3>& points) : pts_(points) {
        idx_.resize(points.size());
        std::iota(idx_.begin(), idx_.end(), 0);
        if (!idx_.empty()) build(0, static_cast<int>(idx_.size()), 0);
    }

    // All point indices within euclidean distance r of q.
    std::vector<int> ball_query(Vec3 q, double r) const {
        std::vector<int> out;
        if (!idx_.empty()) ball(0, static_cast<int>(idx_.size()), 0, q, r * r, out);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static double coord(Vec3 p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

    void build(int lo, int hi, int axis) {
        if (hi - lo <= 1) return;
        int mid = (lo + hi) / 2;
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                         [&](int a, int b) {
                             double ca = coord(pts_[a], axis), cb = coord(pts_[b], axis);
                             return ca < cb || (ca == cb && a < b);
                         });
        build(lo, mid, (axis + 1) % 3);
        build(mid + 1, hi, (axis + 1) % 3);
    }

    void ball(int lo, int hi, int axis, Vec3 q, double r2, std::vector<int>& out) const {
        if (hi <= lo) return;
        int mid = (lo + hi) / 2;
        const Vec3& p = pts_[idx_[mid]];
        Vec3 d = p - q;
        if (dot(d, d) <= r2) out.push_back(idx_[mid]);
        double split = coord(p, axis);
        double delta = coord(q, axis) - split;
        int next = (axis + 1) % 3;
        if (delta <= 0.0 || delta * delta <= r2) ball(lo, mid, next, q, r2, out);
        if (delta >= 0.0 || delta * delta <= r2) ball(mid + 1, hi, next, q, r2, out);
    }

    std::vector<Vec3> pts_;
    std::vector<int> idx_;
};

// Clusters points whose mutual distance chains below eps; returns, for each
// input point, the id of its cluster (ids are dense, ordered by first member).
inline std::vector<int> cluster_points(const std::vector<Vec3>& pts, double eps,
                                       std::vector<Vec3>* centroids = nullptr) {
    const int n = static_cast<int>(pts.size());
    UnionFind uf(n);
    KdTree tree(pts);
    for (int i = 0; i < n; ++i)
        for (int j : tree.ball_query(pts[i], eps))
            if (j > i) uf.unite(i, j);

    std::vector<int> cluster_of(n, -1);
    std::vector<Vec3> sums;
    std::vector<int> counts;
    std::vector<int> id_of_root(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (id_of_root[r] == -1) {
            id_of_root[r] = static_cast<int>(sums.size());
            sums.push_back({0, 0, 0});
            counts.push_back(0);
        }
        int id = id_of_root[r];
        cluster_of[i] = id;
        sums[id] = sums[id] + pts[i];
        counts[id] += 1;
    }
    if (centroids) {
        centroids->resize(sums.size());
        for (size_t k = 0; k < sums.size(); ++k) (*centroids)[k] = sums[k] * (1.0 / counts[k]);
    }
    return cluster_of;
}

// Static centered interval tree; query returns ids of intervals meeting
// [lo, hi].
class IntervalTree {
public:
    struct Interval {
        double lo, hi;
        int id;
    };

    explicit IntervalTree(std::vector<Interval> intervals) {
        if (!intervals.empty()) root_ = build(std::move(intervals));
    }

    std::vector<int> query(double lo, double hi) const {
        std::vector<int> out;
        query(root_, lo, hi, out);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Node {
        double center;
        std::vector<Interval> by_lo;  // intervals containing center, sorted by lo
        std::vector<Interval> by_hi;  // same intervals, sorted by hi descending
        int left = -1, right = -1;
    };

    int build(std::vector<Interval> intervals) {
        std::vector<double> ends;
        ends.reserve(intervals.size() * 2);
        for (const auto& iv : intervals) {
            ends.push_back(iv.lo);
            ends.push_back(iv.hi);
        }
        std::nth_element(ends.begin(), ends.begin() + ends.size() / 2, ends.end());
        double center = ends[ends.size() / 2];

        // center is an endpoint of some interval, so `here` is never empty
        // and both sides shrink strictly.
        std::vector<Interval> here, left, right;
        for (auto& iv : intervals) {
            if (iv.hi < center) left.push_back(iv);
            else if (iv.lo > center) right.push_back(iv);
            else here.push_back(iv);
        }
        Node node;
        node.center = center;
        node.by_lo = here;
        std::sort(node.by_lo.begin(), node.by_lo.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        node.by_hi = std::move(here);
        std::sort(node.by_hi.begin(), node.by_hi.end(),
                  [](const Interval& a, const Interval& b) { return a.hi > b.hi; });
        int self = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(node));
        if (!left.empty()) {
            int l = build(std::move(left));
            nodes_[self].left = l;
        }
        if (!right.empty()) {
            int r = build(std::move(right));
            nodes_[self].right = r;
        }
        return self;
    }

    void query(int ni, double lo, double hi, std::vector<int>& out) const {
        if (ni < 0) return;
        const Node& n = nodes_[ni];
        if (hi < n.center) {
            for (const auto& iv : n.by_lo) {
                if (iv.lo > hi) break;
                out.push_back(iv.id);
            }
            query(n.left, lo, hi, out);
        } else if (lo > n.center) {
            for (const auto& iv : n.by_hi) {
                if (iv.hi < lo) break;
                out.push_back(iv.id);
            }
            query(n.right, lo, hi, out);
        } else {
            for (const auto& iv : n.by_lo) out.push_back(iv.id);
            query(n.left, lo, hi, out);
            query(n.right, lo, hi, out);
        }
    }

    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace arrange
