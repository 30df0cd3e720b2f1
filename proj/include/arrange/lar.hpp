// LAR geometric-complex model: vertex embedding plus per-dimension cell
// lists in canonical (sorted index) form, with the derived operators and
// measures the pipeline is built on.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"
#include "arrange/geometry.hpp"

namespace arrange {

using CanonicalCell = std::vector<int>;  // strictly increasing vertex indices

struct GeometricComplex {
    int dim = 2;                    // ambient dimension, 2 or 3
    std::vector<Vec3> V;            // embedding of 0-cells (z = 0 when dim == 2)
    std::vector<CanonicalCell> EV;  // 1-cells as vertex pairs
    std::vector<CanonicalCell> FV;  // 2-cells as vertex supports
    std::vector<CanonicalCell> CV;  // 3-cells as vertex supports (dim == 3 output)

    int vertex_count() const { return static_cast<int>(V.size()); }

    Box3 bounding_box() const {
        Box3 b;
        for (const auto& p : V) b.expand(p);
        return b;
    }

    const std::vector<CanonicalCell>& cells(int p) const {
        switch (p) {
            case 1: return EV;
            case 2: return FV;
            case 3: return CV;
            default: throw IndexOutOfRange("no cell list for dimension " + std::to_string(p));
        }
    }

    void validate() const {
        if (dim != 2 && dim != 3) throw ValidationError("ambient dimension must be 2 or 3");
        auto check = [&](const std::vector<CanonicalCell>& cells, const char* what,
                         int exact_size) {
            std::set<CanonicalCell> seen;
            for (const auto& c : cells) {
                if (exact_size && static_cast<int>(c.size()) != exact_size)
                    throw ValidationError(std::string(what) + " with wrong vertex count");
                if (!std::is_sorted(c.begin(), c.end()) ||
                    std::adjacent_find(c.begin(), c.end()) != c.end())
                    throw ValidationError(std::string(what) + " not in canonical form");
                if (!c.empty() && (c.front() < 0 || c.back() >= vertex_count()))
                    throw ValidationError(std::string(what) + " index out of range");
                if (!seen.insert(c).second)
                    throw ValidationError(std::string("duplicate ") + what);
            }
        };
        check(EV, "1-cell", 2);
        check(FV, "2-cell", 0);
        check(CV, "3-cell", 0);
    }
};

inline CanonicalCell canonical(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

// Characteristic matrix M of a collection of subsets: row i holds the
// members of cell i.
inline UnsignedMatrix characteristic_matrix(const std::vector<CanonicalCell>& cells,
                                            int n_verts) {
    for (const auto& c : cells)
        for (int v : c)
            if (v < 0 || v >= n_verts)
                throw IndexOutOfRange("cell vertex " + std::to_string(v) + " out of range");
    return UnsignedMatrix::from_rows(cells, n_verts);
}

// Signed [d1]: column h carries +1 at the larger vertex index and -1 at the
// smaller, so every column sums to zero.
inline SignedOperator signed_boundary_1(const std::vector<CanonicalCell>& ev, int n_verts) {
    std::vector<std::array<int, 3>> triples;
    triples.reserve(ev.size() * 2);
    for (size_t h = 0; h < ev.size(); ++h) {
        if (ev[h].size() != 2 || ev[h][0] == ev[h][1])
            throw DegenerateEdge("edge " + std::to_string(h) + " has no two distinct vertices");
        int k1 = std::min(ev[h][0], ev[h][1]);
        int k2 = std::max(ev[h][0], ev[h][1]);
        if (k1 < 0 || k2 >= n_verts)
            throw IndexOutOfRange("edge vertex out of range in edge " + std::to_string(h));
        triples.push_back({k1, static_cast<int>(h), -1});
        triples.push_back({k2, static_cast<int>(h), +1});
    }
    return SignedOperator::from_triples(n_verts, static_cast<int>(ev.size()), triples);
}

// Unsigned [d2] = filter(M1 * M2^t, 2): edge belongs to a face exactly when
// both endpoints lie in the face's vertex set.
inline UnsignedMatrix unsigned_boundary_2(const std::vector<CanonicalCell>& fv,
                                          const std::vector<CanonicalCell>& ev, int n_verts) {
    UnsignedMatrix m1 = characteristic_matrix(ev, n_verts);
    UnsignedMatrix m2 = characteristic_matrix(fv, n_verts);
    return filter_entries(unsigned_product(m1, m2), 2);
}

// Traces the closed loops of a signed 1-cycle as ordered vertex sequences.
// Each entry (e, s) is traversed tail->head with head = max endpoint iff s > 0.
inline std::vector<std::vector<int>> trace_loops(const SignedChain& cycle,
                                                 const std::vector<CanonicalCell>& ev) {
    struct Dart {
        int tail, head, edge;
        bool used = false;
    };
    std::vector<Dart> darts;
    for (auto [e, s] : cycle.entries()) {
        int a = ev[e][0], b = ev[e][1];
        if (s > 0) darts.push_back({a, b, e});
        else darts.push_back({b, a, e});
    }
    std::map<int, std::vector<int>> by_tail;  // tail vertex -> dart indices
    for (size_t i = 0; i < darts.size(); ++i) by_tail[darts[i].tail].push_back(static_cast<int>(i));

    std::vector<std::vector<int>> loops;
    for (size_t start = 0; start < darts.size(); ++start) {
        if (darts[start].used) continue;
        std::vector<int> loop;
        int cur = static_cast<int>(start);
        while (!darts[cur].used) {
            darts[cur].used = true;
            loop.push_back(darts[cur].tail);
            int next = -1;
            for (int cand : by_tail[darts[cur].head])
                if (!darts[cand].used) { next = cand; break; }
            if (next == -1) {
                if (darts[cur].head != darts[start].tail)
                    throw OpenChain("1-chain does not close into loops");
                break;
            }
            cur = next;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

namespace detail {

inline double loop_area(const std::vector<int>& loop, const std::vector<Vec3>& v) {
    double a = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) {
        const Vec3& p = v[loop[i]];
        const Vec3& q = v[loop[(i + 1) % loop.size()]];
        a += p.x * q.y - q.x * p.y;
    }
    return a / 2.0;
}

// Flux of x/3 through the fan triangulation of a planar loop; exact for any
// planar polygon regardless of convexity.
inline double loop_volume_flux(const std::vector<int>& loop, const std::vector<Vec3>& v) {
    if (loop.size() < 3) return 0.0;
    const Vec3& p0 = v[loop[0]];
    double vol = 0.0;
    for (size_t i = 1; i + 1 < loop.size(); ++i)
        vol += det3(p0, v[loop[i]], v[loop[i + 1]]);
    return vol / 6.0;
}

}  // namespace detail

// Oriented measure (area for d=2, volume for d=3) of the region bounded by a
// closed oriented (d-1)-cycle, via the divergence theorem.  `face_boundary`
// is the operator one grade below the cycle: [d1] for d=2 (used for the
// closure check), [d2] for d=3 (face 1-cycles drive the flux integration).
inline double signed_measure(const SignedChain& cycle, const GeometricComplex& complex,
                             const SignedOperator& face_boundary) {
    if (!face_boundary.apply(cycle).is_zero())
        throw OpenChain("signed_measure requires a closed chain");
    if (complex.dim == 2) {
        double a = 0.0;
        for (auto [e, s] : cycle.entries()) {
            const Vec3& p = complex.V[complex.EV[e][0]];
            const Vec3& q = complex.V[complex.EV[e][1]];
            a += s * (p.x * q.y - q.x * p.y);
        }
        return a / 2.0;
    }
    double vol = 0.0;
    for (auto [f, s] : cycle.entries()) {
        SignedChain fc = face_boundary.column(f, 2);
        for (const auto& loop : trace_loops(fc, complex.EV))
            vol += s * detail::loop_volume_flux(loop, complex.V);
    }
    return vol;
}

// The chain complex of an arrangement: graded bases plus operators d_1..d_d.
struct ChainComplexResult {
    int dim = 2;
    GeometricComplex complex;
    std::vector<SignedOperator> boundary;  // boundary[p-1] is the matrix of d_p

    const SignedOperator& boundary_op(int p) const {
        if (p < 1 || p > static_cast<int>(boundary.size()))
            throw IndexOutOfRange("no boundary operator of grade " + std::to_string(p));
        return boundary[p - 1];
    }

    int cell_count(int p) const {
        if (p == 0) return complex.vertex_count();
        return boundary_op(p).cols();
    }
};

// Alternating sum of cell counts; the outer d-cell is extra to the d_d basis.
inline long euler_characteristic(const ChainComplexResult& r, bool include_outer) {
    long chi = 0;
    for (int p = 0; p <= r.dim; ++p) {
        long n = r.cell_count(p);
        if (p == r.dim && include_outer) n += 1;
        chi += (p % 2 == 0) ? n : -n;
    }
    return chi;
}

}  // namespace arrange
