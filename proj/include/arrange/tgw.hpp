// Topological gift wrapping: extraction of the minimal (d-1)-cycles of a
// regular (d-1)-skeleton as columns of the augmented top boundary matrix,
// outer cycle included.  The geometric input enters only through the cyclic
// angular ordering of (d-1)-cells around (d-2)-hinges.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"
#include "arrange/geometry.hpp"
#include "arrange/lar.hpp"

namespace arrange {

// Incident (d-1)-cells around one hinge, in counterclockwise order about the
// hinge's oriented axis (+z for d=2, the low->high edge direction for d=3).
struct CyclicOrder {
    int hinge = -1;
    std::vector<int> ring;   // cell ids, CCW
    std::vector<int> signs;  // coefficient of the hinge in each member's boundary

    int position(int cell) const {
        for (size_t i = 0; i < ring.size(); ++i)
            if (ring[i] == cell) return static_cast<int>(i);
        throw IndexOutOfRange("cell " + std::to_string(cell) + " not incident to hinge " +
                              std::to_string(hinge));
    }
    int next(int cell) const { return ring[(position(cell) + 1) % ring.size()]; }
    int prev(int cell) const {
        return ring[(position(cell) + ring.size() - 1) % ring.size()];
    }
};

using OrderFn = std::function<CyclicOrder(int hinge, const std::vector<int>& incident)>;

enum class SeedPolicy { lowest_index, highest_index };

namespace detail {

struct RowIndex {
    std::vector<std::vector<std::pair<int, int>>> rows;  // row -> (col, val)

    explicit RowIndex(const SignedOperator& m) : rows(m.rows()) {
        for (const auto& [i, j, v] : m.to_triples()) rows[i].push_back({j, v});
    }
};

}  // namespace detail

// Runs the wrapping loop of the TGW algorithm for one seed, producing a
// single closed, coherently oriented (d-1)-cycle through the seed cell.
class CycleExtractor {
public:
    CycleExtractor(const SignedOperator& boundary, OrderFn order)
        : boundary_(&boundary), rows_(boundary), order_(std::move(order)) {}

    SignedChain extract(int seed, int sign) const {
        const SignedOperator& bd = *boundary_;
        if (seed < 0 || seed >= bd.cols())
            throw IndexOutOfRange("seed cell " + std::to_string(seed) + " out of range");

        std::map<int, int> c{{seed, sign}};
        std::map<int, int> residual;
        add_boundary(seed, sign, residual);
        int guard = bd.cols() + 2;
        while (!residual.empty()) {
            if (--guard < 0)
                throw NonTerminating("cycle extraction did not close; illegal input data");
            std::map<int, int> corolla;
            for (auto [hinge, t] : residual) {
                const auto& incident = rows_.rows[hinge];
                int pivot = -1;
                for (auto [cell, v] : incident) {
                    auto it = c.find(cell);
                    if (it != c.end() && v * it->second == (t > 0 ? 1 : -1)) {
                        pivot = cell;
                        break;
                    }
                }
                if (pivot == -1)
                    throw NonTerminating("no pivot cell at hinge " + std::to_string(hinge));
                const CyclicOrder& ord = ring_for(hinge);
                if (ord.ring.size() < 2)
                    throw NonTerminating("hinge " + std::to_string(hinge) +
                                         " has a single incident cell; dangling input");
                int adj = t > 0 ? ord.next(pivot) : ord.prev(pivot);
                int new_sign = bd.coefficient(hinge, adj) != bd.coefficient(hinge, pivot)
                                   ? c[pivot]
                                   : -c[pivot];
                auto it = corolla.find(adj);
                if (it != corolla.end() && it->second != new_sign)
                    throw NonManifoldInput("conflicting orientation for cell " +
                                           std::to_string(adj));
                corolla[adj] = new_sign;
            }
            for (auto [cell, s] : corolla) {
                int v = c[cell] + s;
                if (v < -1 || v > 1)
                    throw NonManifoldInput("cell " + std::to_string(cell) +
                                           " used twice in one cycle");
                if (v == 0) c.erase(cell);
                else c[cell] = v;
                add_boundary(cell, s, residual);
            }
        }

        SignedChain out(0, bd.cols());
        for (auto [cell, s] : c) out.set(cell, s);
        return out;
    }

private:
    void add_boundary(int cell, int s, std::map<int, int>& residual) const {
        SignedChain col = boundary_->column(cell);
        for (auto [i, v] : col.entries()) {
            int nv = residual[i] + s * v;
            if (nv == 0) residual.erase(i);
            else residual[i] = nv;
        }
    }

    const CyclicOrder& ring_for(int hinge) const {
        auto it = ring_cache_.find(hinge);
        if (it == ring_cache_.end()) {
            std::vector<int> incident;
            for (auto [cell, v] : rows_.rows[hinge]) incident.push_back(cell);
            it = ring_cache_.emplace(hinge, order_(hinge, incident)).first;
        }
        return it->second;
    }

    const SignedOperator* boundary_;
    detail::RowIndex rows_;
    OrderFn order_;
    mutable std::map<int, CyclicOrder> ring_cache_;
};

// Seed chooser: given the usage counters, returns a cell with marks < 2.
using ChooseFn = std::function<int(const std::vector<int>& marks)>;

inline ChooseFn make_choose(SeedPolicy policy) {
    return [policy](const std::vector<int>& marks) {
        int n = static_cast<int>(marks.size());
        if (policy == SeedPolicy::lowest_index) {
            for (int i = 0; i < n; ++i)
                if (marks[i] < 2) return i;
        } else {
            for (int i = n - 1; i >= 0; --i)
                if (marks[i] < 2) return i;
        }
        return -1;
    };
}

// Full TGW run: extracts cycles until every (d-1)-cell has been used exactly
// twice, with net opposite orientation.  The result is the augmented matrix
// whose columns are all minimal cycles, the outer one included; its total
// nonzero count is exactly twice the (d-1)-cell count.  The output is unique
// up to column order and per-column global sign whatever the seed chooser.
inline SignedOperator tgw(const SignedOperator& boundary, const OrderFn& order,
                          const ChooseFn& choose) {
    const int n = boundary.cols();
    CycleExtractor extractor(boundary, order);
    std::vector<int> marks(n, 0), used_sign(n, 0);
    std::vector<SignedChain> columns;
    long total = 0;
    while (total < 2L * n) {
        int seed = choose(marks);
        if (seed < 0 || seed >= n || marks[seed] >= 2)
            throw NonTerminating("seed chooser returned no admissible cell");
        int sign = marks[seed] == 0 ? 1 : -used_sign[seed];
        SignedChain cycle = extractor.extract(seed, sign);
        if (!boundary.apply(cycle).is_zero())
            throw NonManifoldInput("extracted chain is not a cycle");
        for (auto [cell, s] : cycle.entries()) {
            marks[cell] += 1;
            if (marks[cell] > 2)
                throw NonManifoldInput("cell " + std::to_string(cell) +
                                       " lies on more than two cycles");
            used_sign[cell] += s;
            total += 1;
        }
        columns.push_back(std::move(cycle));
    }
    for (int i = 0; i < n; ++i)
        if (used_sign[i] != 0)
            throw NonManifoldInput("cell " + std::to_string(i) +
                                   " used twice with the same orientation");
    return SignedOperator::from_columns(n, columns);
}

inline SignedOperator tgw(const SignedOperator& boundary, const OrderFn& order,
                          SeedPolicy policy = SeedPolicy::lowest_index) {
    return tgw(boundary, order, make_choose(policy));
}

// ---------------------------------------------------------------------------
// Geometric cyclic orderings.
// ---------------------------------------------------------------------------

namespace detail {

inline void check_angular_separation(const std::vector<double>& sorted_angles, int hinge,
                                     double tol) {
    const size_t k = sorted_angles.size();
    if (k < 2) return;
    for (size_t i = 0; i < k; ++i) {
        double a = sorted_angles[i];
        double b = (i + 1 < k) ? sorted_angles[i + 1]
                               : sorted_angles[0] + 2.0 * std::numbers::pi;
        if (b - a < tol)
            throw DegenerateGeometry("coincident incident cells at hinge " +
                                     std::to_string(hinge));
    }
}

struct FacePlane {
    Vec3 normal;                                      // unit
    Vec3 origin;
    Vec3 u1, u2;                                      // in-plane orthonormal frame
    std::vector<std::pair<Vec2, Vec2>> edges2d;       // projected boundary edges

    Vec2 project(Vec3 p) const {
        Vec3 d = p - origin;
        return {dot(d, u1), dot(d, u2)};
    }
};

inline Vec3 stable_perpendicular(Vec3 u) {
    double ax = std::fabs(u.x), ay = std::fabs(u.y), az = std::fabs(u.z);
    Vec3 axis = (ax <= ay && ax <= az) ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return normalized(axis - u * dot(axis, u));
}

inline FacePlane face_plane(const SignedChain& face_cycle, const GeometricComplex& complex) {
    FacePlane fp;
    Vec3 n{0, 0, 0};
    // Newell normal over the signed boundary; robust for non-convex faces.
    for (auto [e, s] : face_cycle.entries()) {
        Vec3 p = complex.V[complex.EV[e][0]];
        Vec3 q = complex.V[complex.EV[e][1]];
        Vec3 contrib = cross(p, q);
        n = n + contrib * static_cast<double>(s);
    }
    double len = norm(n);
    if (len == 0.0) throw DegenerateGeometry("face with vanishing area");
    fp.normal = n * (1.0 / len);
    int first_edge = face_cycle.entries().front().first;
    fp.origin = complex.V[complex.EV[first_edge][0]];
    fp.u1 = stable_perpendicular(fp.normal);
    fp.u2 = cross(fp.normal, fp.u1);
    for (const auto& ent : face_cycle.entries()) {
        Vec2 a = fp.project(complex.V[complex.EV[ent.first][0]]);
        Vec2 b = fp.project(complex.V[complex.EV[ent.first][1]]);
        fp.edges2d.push_back({a, b});
    }
    return fp;
}

// In-plane unit direction at the hinge midpoint pointing into the face.
inline Vec3 face_tangent_at_edge(const FacePlane& fp, const SignedChain& face_cycle,
                                 int hinge_edge, const GeometricComplex& complex) {
    Vec3 a3 = complex.V[complex.EV[hinge_edge][0]];
    Vec3 b3 = complex.V[complex.EV[hinge_edge][1]];
    Vec3 mid3 = (a3 + b3) * 0.5;
    Vec3 axis = normalized(b3 - a3);
    Vec3 dir3 = cross(fp.normal, axis);

    Vec2 m = fp.project(mid3);
    Vec2 d{dot(dir3, fp.u1), dot(dir3, fp.u2)};
    double dn = norm(d);
    if (dn == 0.0) throw DegenerateGeometry("hinge edge parallel to face normal");
    d = d * (1.0 / dn);

    double min_d2 = std::numeric_limits<double>::max();
    size_t k = 0;
    for (const auto& ent : face_cycle.entries()) {
        if (ent.first != hinge_edge) {
            const auto& [p, q] = fp.edges2d[k];
            min_d2 = std::min(min_d2, point_segment_dist2(m, p, q));
        }
        ++k;
    }
    double delta = (min_d2 == std::numeric_limits<double>::max())
                       ? norm(b3 - a3) * 0.25
                       : 0.5 * std::sqrt(min_d2);
    if (delta == 0.0)
        throw DegenerateGeometry("coincident edge through hinge midpoint");

    for (double side : {1.0, -1.0}) {
        Vec2 probe = m + d * (side * delta);
        int crossings = 0;
        bool clean = true;
        for (const auto& [p, q] : fp.edges2d) {
            bool up = p.y <= probe.y && q.y > probe.y;
            bool down = q.y <= probe.y && p.y > probe.y;
            if (!up && !down) continue;
            double o = orient2d(p, q, probe);
            if (o == 0.0) { clean = false; break; }
            if ((up && o > 0.0) || (down && o < 0.0)) crossings += 1;
        }
        if (clean && crossings % 2 == 1) return dir3 * side;
    }
    throw DegenerateGeometry("cannot resolve face side at hinge edge " +
                             std::to_string(hinge_edge));
}

}  // namespace detail

// d = 2: edges around a vertex, sorted by the polar angle of the edge ray.
inline CyclicOrder cyclic_order_2d(int hinge_vertex, const std::vector<int>& incident_edges,
                                   const GeometricComplex& complex, double angle_tol = 1e-12) {
    CyclicOrder ord;
    ord.hinge = hinge_vertex;
    std::vector<std::pair<double, int>> items;
    for (int e : incident_edges) {
        int other = complex.EV[e][0] == hinge_vertex ? complex.EV[e][1] : complex.EV[e][0];
        Vec3 d = complex.V[other] - complex.V[hinge_vertex];
        items.push_back({std::atan2(d.y, d.x), e});
    }
    std::sort(items.begin(), items.end());
    std::vector<double> angles;
    for (auto [a, e] : items) {
        angles.push_back(a);
        ord.ring.push_back(e);
    }
    detail::check_angular_separation(angles, hinge_vertex, angle_tol);
    return ord;
}

// d = 3: faces around an edge, sorted by the angle of their tangent
// directions in the plane orthogonal to the edge (axis oriented low -> high).
inline CyclicOrder cyclic_order_3d(int hinge_edge, const std::vector<int>& incident_faces,
                                   const GeometricComplex& complex, const SignedOperator& d2,
                                   double angle_tol = 1e-9) {
    CyclicOrder ord;
    ord.hinge = hinge_edge;
    Vec3 a = complex.V[complex.EV[hinge_edge][0]];
    Vec3 b = complex.V[complex.EV[hinge_edge][1]];
    Vec3 axis = normalized(b - a);
    Vec3 r0 = detail::stable_perpendicular(axis);
    Vec3 s0 = cross(axis, r0);

    std::vector<std::pair<double, int>> items;
    for (int f : incident_faces) {
        SignedChain cyc = d2.column(f, 2);
        detail::FacePlane fp = detail::face_plane(cyc, complex);
        Vec3 t = detail::face_tangent_at_edge(fp, cyc, hinge_edge, complex);
        items.push_back({std::atan2(dot(t, s0), dot(t, r0)), f});
    }
    std::sort(items.begin(), items.end());
    std::vector<double> angles;
    for (auto [ang, f] : items) {
        angles.push_back(ang);
        ord.ring.push_back(f);
    }
    detail::check_angular_separation(angles, hinge_edge, angle_tol);
    return ord;
}

// Dispatching form; d = 3 needs the face boundary operator for tangents.
inline CyclicOrder cyclic_order(int hinge, const std::vector<int>& incident,
                                const GeometricComplex& complex, int d,
                                const SignedOperator* d2 = nullptr) {
    if (incident.empty()) throw DegenerateGeometry("hinge without incident cells");
    if (d == 2) return cyclic_order_2d(hinge, incident, complex);
    if (d == 3) {
        if (!d2) throw Error("cyclic_order in 3D requires the face boundary operator");
        return cyclic_order_3d(hinge, incident, complex, *d2);
    }
    throw DimensionMismatch("cyclic_order only defined for d in {2,3}");
}

inline OrderFn make_order_2d(const GeometricComplex& complex) {
    return [&complex](int hinge, const std::vector<int>& incident) {
        return cyclic_order_2d(hinge, incident, complex);
    };
}

inline OrderFn make_order_3d(const GeometricComplex& complex, const SignedOperator& d2) {
    return [&complex, &d2](int hinge, const std::vector<int>& incident) {
        return cyclic_order_3d(hinge, incident, complex, d2);
    };
}

}  // namespace arrange
