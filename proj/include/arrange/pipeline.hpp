// Pipeline orchestration: Input, Indexing, Decomposition, Congruence,
// Connection, Bases, Boundaries, Containment, Reduction, Adjoining,
// Assembling, Output — for the 3D arrangement, with the 2D pipeline
// delegated to arrangement2d.
#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "arrange/arrangement2d.hpp"
#include "arrange/congruence.hpp"
#include "arrange/errors.hpp"
#include "arrange/fragment.hpp"
#include "arrange/lar.hpp"
#include "arrange/shells.hpp"
#include "arrange/tgw.hpp"

namespace arrange {

struct PipelineConfig {
    int dim = 3;
    double eps = 1e-8;          // relative to the input bounding-box diagonal
    bool eps_absolute = false;
    int threads = 1;
    bool check = true;          // run the d.d = 0 and Eq.1 validity checks
};

struct StageTime {
    std::string name;
    double seconds = 0.0;
};

struct ArrangeReport {
    std::vector<StageTime> timings;
    std::vector<long> cell_counts;  // by dimension, bounded cells only
    long chi_with_outer = 0;
    long chi_without_outer = 0;
    bool dd_zero = true;
    bool eq1 = true;
    int components = 0;
    int hole_pairs = 0;
    int dangling_removed = 0;
    int dropped_segments = 0;
    double eps_used = 0.0;
};

namespace detail {

class StageClock {
public:
    explicit StageClock(ArrangeReport* report) : report_(report) {}
    void lap(const std::string& name) {
        auto now = std::chrono::steady_clock::now();
        if (report_) {
            double s = std::chrono::duration<double>(now - last_).count();
            report_->timings.push_back({name, s});
        }
        last_ = now;
    }

private:
    ArrangeReport* report_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

template <class F>
void parallel_for(int n, int threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

// Boundary loops of every 2-cell of an input complex, as vertex positions.
// A face's edges are the 1-cells supported by its vertex set; they must form
// disjoint simple loops covering the face.
inline std::vector<FaceLoops> face_loops_from_complex(const GeometricComplex& cx) {
    UnsignedMatrix fe = unsigned_boundary_2(cx.FV, cx.EV, cx.vertex_count());
    std::vector<std::vector<int>> edges_of_face(cx.FV.size());
    for (int e = 0; e < fe.rows(); ++e)
        for (int f : fe.row_support(e)) edges_of_face[f].push_back(e);

    std::vector<FaceLoops> out(cx.FV.size());
    for (size_t f = 0; f < cx.FV.size(); ++f) {
        std::map<int, std::vector<int>> adj;  // vertex -> incident face edges
        for (int e : edges_of_face[f]) {
            adj[cx.EV[e][0]].push_back(e);
            adj[cx.EV[e][1]].push_back(e);
        }
        for (auto& [v, inc] : adj)
            if (inc.size() != 2)
                throw ValidationError("face " + std::to_string(f) +
                                      " has a vertex of boundary degree " +
                                      std::to_string(inc.size()));
        std::set<int> unused(edges_of_face[f].begin(), edges_of_face[f].end());
        while (!unused.empty()) {
            int e0 = *unused.begin();
            std::vector<Vec3> loop;
            int v = cx.EV[e0][0];
            int e = e0;
            do {
                unused.erase(e);
                loop.push_back(cx.V[v]);
                int w = cx.EV[e][0] == v ? cx.EV[e][1] : cx.EV[e][0];
                const auto& inc = adj[w];
                e = inc[0] == e ? inc[1] : inc[0];
                v = w;
            } while (e != e0 && unused.count(e));
            if (loop.size() < 3)
                throw ValidationError("degenerate boundary loop on face " + std::to_string(f));
            out[f].push_back(std::move(loop));
        }
    }
    return out;
}

struct Arrangement3DBuild {
    ChainComplexResult result;
    std::vector<SignedChain> root_shells;
    std::vector<std::pair<long, long>> eq1;  // per component
    int hole_pairs = 0;
    int dangling_removed = 0;
};

// Removes 2-cells with free edges (edges on a single face) until the
// skeleton is regular, compacting the bases afterwards.
inline int regularize_skeleton(GeometricComplex& cx, std::vector<SignedChain>& cycles) {
    int removed_total = 0;
    std::vector<bool> face_alive(cycles.size(), true);
    for (;;) {
        std::vector<int> edge_deg(cx.EV.size(), 0);
        for (size_t f = 0; f < cycles.size(); ++f)
            if (face_alive[f])
                for (int e : cycles[f].support()) edge_deg[e] += 1;
        int removed = 0;
        for (size_t f = 0; f < cycles.size(); ++f) {
            if (!face_alive[f]) continue;
            for (int e : cycles[f].support())
                if (edge_deg[e] < 2) {
                    face_alive[f] = false;
                    removed += 1;
                    break;
                }
        }
        if (removed == 0) break;
        removed_total += removed;
    }
    if (removed_total == 0) return 0;

    std::vector<SignedChain> kept;
    for (size_t f = 0; f < cycles.size(); ++f)
        if (face_alive[f]) kept.push_back(cycles[f]);
    if (kept.empty()) throw ValidationError("illegal data: no regular 2-cells remain");

    // compact edges and vertices (monotone reindexing keeps edge directions)
    std::vector<int> edge_new(cx.EV.size(), -1), vert_new(cx.V.size(), -1);
    std::vector<CanonicalCell> new_ev;
    std::vector<Vec3> new_v;
    for (const auto& c : kept)
        for (int e : c.support())
            if (edge_new[e] == -1) edge_new[e] = 0;
    for (size_t e = 0; e < cx.EV.size(); ++e)
        if (edge_new[e] == 0)
            for (int v : cx.EV[e]) vert_new[v] = 0;
    int nv = 0;
    for (size_t v = 0; v < cx.V.size(); ++v)
        if (vert_new[v] == 0) {
            vert_new[v] = nv++;
            new_v.push_back(cx.V[v]);
        }
    int ne = 0;
    for (size_t e = 0; e < cx.EV.size(); ++e)
        if (edge_new[e] == 0) {
            edge_new[e] = ne++;
            new_ev.push_back({vert_new[cx.EV[e][0]], vert_new[cx.EV[e][1]]});
        }
    std::vector<SignedChain> new_cycles;
    std::vector<CanonicalCell> new_fv;
    for (const auto& c : kept) {
        SignedChain nc(2, ne);
        std::set<int> vs;
        for (auto [e, s] : c.entries()) {
            nc.set(edge_new[e], s);
            vs.insert(new_ev[edge_new[e]].begin(), new_ev[edge_new[e]].end());
        }
        new_cycles.push_back(std::move(nc));
        new_fv.push_back({vs.begin(), vs.end()});
    }
    cx.V = std::move(new_v);
    cx.EV = std::move(new_ev);
    cx.FV = std::move(new_fv);
    cycles = std::move(new_cycles);
    return removed_total;
}

// Full 3D pipeline over a collection of geometric complexes.
inline Arrangement3DBuild arrangement3d_build(const std::vector<GeometricComplex>& inputs,
                                              const PipelineConfig& cfg = {},
                                              ArrangeReport* report = nullptr) {
    detail::StageClock clock(report);

    // Input: combinatorial union of the 2-skeletons
    std::vector<FaceLoops> faces;
    Box3 scene_box;
    for (const auto& input : inputs) {
        if (input.dim != 3) throw ValidationError("3D pipeline needs dim-3 complexes");
        auto loops = face_loops_from_complex(input);
        faces.insert(faces.end(), loops.begin(), loops.end());
        for (const auto& p : input.V) scene_box.expand(p);
    }
    if (faces.empty()) throw ValidationError("input collection has no 2-cells");
    double eps = cfg.eps_absolute ? cfg.eps : cfg.eps * std::max(scene_box.diagonal(), 1e-300);
    if (report) report->eps_used = eps;
    clock.lap("input");

    // Indexing
    std::vector<Box3> boxes;
    for (const auto& f : faces) boxes.push_back(face_box(f));
    SpatialIndex index(boxes, eps);
    clock.lap("indexing");

    // Decomposition: independent fragmentation of every 2-cell
    FragmentOptions fopt;
    fopt.eps = eps;
    fopt.z_tol = std::max(1e-12, eps * 1e-1);
    fopt.coplanar_tol = std::max(1e-9, eps);
    std::vector<LocalFragment> fragments(faces.size());
    detail::parallel_for(static_cast<int>(faces.size()), cfg.threads, [&](int i) {
        fragments[i] = fragment_face(i, faces, boxes, index, fopt);
    });
    clock.lap("decomposition");

    // Congruence
    QuotientResult glued = quotient_complex(fragments, eps);
    clock.lap("congruence");

    Arrangement3DBuild out;
    out.dangling_removed = regularize_skeleton(glued.complex, glued.face_cycles);
    if (out.dangling_removed > 0) {
        glued.d1 = signed_boundary_1(glued.complex.EV, glued.complex.vertex_count());
        glued.d2 = SignedOperator::from_columns(static_cast<int>(glued.complex.EV.size()),
                                                glued.face_cycles);
    }

    // Connection
    ComponentDecomposition comps = split_components(glued.d2, glued.complex.FV);
    clock.lap("connection");

    GeometricComplex& cx = glued.complex;
    MeasureContext ctx{&cx, &glued.d2, &cx.FV, eps};

    // Bases and Boundaries: per-component TGW, outer split, hole pairs
    std::vector<ComponentCells> cells(comps.components.size());
    std::vector<ShellInfo> shells;
    std::vector<std::vector<ShellInfo>> shells_per_comp(comps.components.size());
    std::vector<std::pair<long, long>> eq1(comps.components.size());

    detail::parallel_for(static_cast<int>(comps.components.size()), cfg.threads, [&](int p) {
        const auto& comp = comps.components[p];
        std::map<int, int> local_of;
        for (size_t l = 0; l < comp.cells.size(); ++l)
            local_of[comp.cells[l]] = static_cast<int>(l);
        OrderFn order = [&](int hinge_local, const std::vector<int>& incident_local) {
            std::vector<int> inc;
            for (int l : incident_local) inc.push_back(comp.cells[l]);
            CyclicOrder go = cyclic_order_3d(comp.hinges[hinge_local], inc, cx, glued.d2);
            CyclicOrder lo;
            lo.hinge = hinge_local;
            for (int cell : go.ring) lo.ring.push_back(local_of.at(cell));
            return lo;
        };
        SignedOperator d3p = tgw(comp.boundary, order);
        eq1[p] = {d3p.nnz(), 2L * comp.boundary.cols()};

        std::vector<SignedChain> lifted;
        for (int j = 0; j < d3p.cols(); ++j) {
            SignedChain col = d3p.column(j);
            SignedChain gc(3, glued.d2.cols());
            for (auto [l, s] : col.entries()) gc.set(comp.cells[l], s);
            lifted.push_back(std::move(gc));
        }
        SplitResult split =
            split_outer(SignedOperator::from_columns(glued.d2.cols(), lifted), ctx);
        shells_per_comp[p].push_back({split.outer, p});

        ComponentCells cc{std::move(split.inner), std::move(split.inner_measures)};
        auto pairs = detect_hole_pairs(SignedOperator::from_columns(glued.d2.cols(), cc.columns));
        std::vector<bool> drop(cc.columns.size(), false);
        for (auto [i, j] : pairs) {
            int neg = cc.measures[i] < cc.measures[j] ? i : j;
            drop[neg] = true;
            shells_per_comp[p].push_back({cc.columns[neg], p});
        }
        if (!pairs.empty()) {
            ComponentCells kept2;
            for (size_t j = 0; j < cc.columns.size(); ++j)
                if (!drop[j]) {
                    kept2.columns.push_back(cc.columns[j]);
                    kept2.measures.push_back(cc.measures[j]);
                }
            cc = std::move(kept2);
        }
        cells[p] = std::move(cc);
    });
    for (auto& sv : shells_per_comp) {
        out.hole_pairs += std::max(0, static_cast<int>(sv.size()) - 1);
        shells.insert(shells.end(), sv.begin(), sv.end());
    }
    out.eq1 = eq1;
    clock.lap("bases");

    // Containment, Reduction, Adjoining, Assembling
    Assembled made = assemble(std::move(cells), shells, ctx);
    cx.CV = made.top_cells;
    out.root_shells = std::move(made.root_shells);
    out.result.dim = 3;
    out.result.boundary = {std::move(glued.d1), std::move(glued.d2), std::move(made.d_top)};
    out.result.complex = std::move(glued.complex);
    clock.lap("assembling");

    if (report) {
        report->components = static_cast<int>(comps.components.size());
        report->hole_pairs = out.hole_pairs;
        report->dangling_removed = out.dangling_removed;
    }
    return out;
}

inline ChainComplexResult arrangement3d(const std::vector<GeometricComplex>& inputs,
                                        const PipelineConfig& cfg = {},
                                        ArrangeReport* report = nullptr) {
    return arrangement3d_build(inputs, cfg, report).result;
}

// ---------------------------------------------------------------------------
// Validity checks and reporting shared by the CLI and the test suites.
// ---------------------------------------------------------------------------

inline bool boundary_square_zero(const ChainComplexResult& r) {
    for (int p = 2; p <= r.dim; ++p) {
        const SignedOperator& hi = r.boundary_op(p);
        const SignedOperator& lo = r.boundary_op(p - 1);
        for (int j = 0; j < hi.cols(); ++j) {
            try {
                if (!lo.apply(hi.column(j, p - 1)).is_zero()) return false;
            } catch (const CoefficientOverflow&) {
                return false;
            }
        }
    }
    return true;
}

inline void fill_report(const ChainComplexResult& r, ArrangeReport& rep) {
    rep.cell_counts.clear();
    for (int p = 0; p <= r.dim; ++p) rep.cell_counts.push_back(r.cell_count(p));
    rep.chi_with_outer = euler_characteristic(r, true);
    rep.chi_without_outer = euler_characteristic(r, false);
    rep.dd_zero = boundary_square_zero(r);
}

}  // namespace arrange
