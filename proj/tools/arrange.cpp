// arrange: chain complexes of 2D/3D space arrangements.
//
//   arrange --dim 2 --input segments.json --output out.json --report-euler
//   arrange --dim 3 --input scene.json --check --export-mm matrices/
//   arrange convert --from obj --to lar-json --input mesh.obj --output mesh.json
//   arrange gen --dim 3 --count 2 --seed 7 --output scene.json
//
// Exit codes: 0 success (all enabled checks pass), 1 check failure,
// 2 parse error, 3 validation error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arrange/arrangement2d.hpp"
#include "arrange/formats.hpp"
#include "arrange/matrix_io.hpp"
#include "arrange/pipeline.hpp"
#include "arrange/scenes.hpp"

namespace {

int log_level() {
    const char* env = std::getenv("ARRANGE_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[arrange] " << msg << "\n";
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw arrange::ParseError("cannot open input file: " + path);
    return is;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw arrange::Error("cannot open output file: " + path);
    os << text;
}

void print_report(const arrange::ArrangeReport& rep, const arrange::ChainComplexResult& r,
                  bool euler, bool timings) {
    if (rep.dropped_segments > 0)
        std::cout << "warning: dropped " << rep.dropped_segments
                  << " degenerate/duplicate input segment(s)\n";
    if (rep.dangling_removed > 0)
        std::cout << "warning: removed " << rep.dangling_removed << " dangling 2-cell(s)\n";
    std::cout << "cells:";
    for (size_t p = 0; p < rep.cell_counts.size(); ++p)
        std::cout << " X" << p << "=" << rep.cell_counts[p];
    std::cout << " (+1 outer " << r.dim << "-cell)\n";
    if (euler) {
        std::cout << "euler characteristic: " << rep.chi_with_outer << " with outer cell, "
                  << rep.chi_without_outer << " without\n";
    }
    if (timings) {
        for (const auto& t : rep.timings)
            std::cout << "stage " << t.name << ": " << t.seconds << " s\n";
    }
}

int run_checks(const arrange::ArrangeReport& rep,
               const std::vector<std::pair<long, long>>& eq1) {
    bool ok = rep.dd_zero;
    for (auto [nnz, twice] : eq1)
        if (nnz != twice) ok = false;
    std::cout << "check d.d=0: " << (rep.dd_zero ? "pass" : "FAIL") << "\n";
    bool eq1_ok = true;
    for (auto [nnz, twice] : eq1) eq1_ok = eq1_ok && nnz == twice;
    std::cout << "check 2#cells identity: " << (eq1_ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

void export_mm(const arrange::ChainComplexResult& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (int p = 1; p <= r.dim; ++p) {
        std::ostringstream os;
        arrange::write_matrix_market(os, r.boundary_op(p));
        write_text(dir + "/boundary_" + std::to_string(p) + ".mtx", os.str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chain complexes of 2D/3D space arrangements"};
    app.require_subcommand(0, 1);

    int dim = 2;
    std::string input_path, output_path, export_dir;
    double eps = 1e-8;
    bool eps_abs = false;
    bool report_euler = false;
    bool check = false;
    bool timings = false;
    int threads = 1;

    app.add_option("--dim", dim, "ambient dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    app.add_option("--input", input_path, "input file (LAR-JSON, or segment rows for --dim 2)");
    app.add_option("--output", output_path, "output LAR-JSON path");
    app.add_option("--eps", eps, "snap tolerance, relative to the scene diagonal");
    app.add_flag("--eps-absolute", eps_abs, "treat --eps as an absolute length");
    app.add_flag("--report-euler", report_euler, "print the Euler characteristic");
    app.add_flag("--check", check, "verify d.d = 0 and the 2#cells identity");
    app.add_flag("--timings", timings, "print per-stage wall times");
    app.add_option("--export-mm", export_dir, "directory for MatrixMarket operator files");
    app.add_option("--threads", threads, "worker threads for the parallel stages");

    auto* convert = app.add_subcommand("convert", "convert between mesh/operator formats");
    std::string conv_from = "obj", conv_to = "lar-json";
    std::string conv_in, conv_out;
    convert->add_option("--from", conv_from, "source format: obj | lar-json")
        ->check(CLI::IsMember({"obj", "lar-json"}));
    convert->add_option("--to", conv_to, "target format: lar-json | mm")
        ->check(CLI::IsMember({"lar-json", "mm"}));
    convert->add_option("--input", conv_in, "source file")->required();
    convert->add_option("--output", conv_out, "target file or directory")->required();

    auto* gen = app.add_subcommand("gen", "generate a deterministic random test scene");
    int gen_dim = 2, gen_count = 100;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    bool gen_tetra = false;
    gen->add_option("--dim", gen_dim, "scene dimension")->check(CLI::IsMember({2, 3}));
    gen->add_option("--count", gen_count, "segments (2D) or meshes (3D)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_flag("--tetra", gen_tetra, "use tetrahedra instead of cubes (3D)");
    gen->add_option("--output", gen_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen_dim == 2) {
                auto segs = arrange::random_segments_2d(gen_count, gen_seed);
                arrange::Json rows = arrange::Json::array();
                for (const auto& s : segs) rows.push_back({s.a.x, s.a.y, s.b.x, s.b.y});
                write_text(gen_out, rows.dump(2) + "\n");
            } else {
                auto scene = arrange::random_scene_3d(gen_count, gen_seed, gen_tetra);
                arrange::Json arr = arrange::Json::array();
                for (const auto& cx : scene) arr.push_back(arrange::complex_to_json(cx));
                write_text(gen_out, arr.dump(2) + "\n");
            }
            info("scene written to " + gen_out);
            return 0;
        }

        if (convert->parsed()) {
            if (conv_from == "obj") {
                if (conv_to != "lar-json")
                    throw arrange::UnsupportedFormat("obj converts to lar-json only");
                auto is = open_input(conv_in);
                arrange::GeometricComplex cx = arrange::read_obj(is);
                write_text(conv_out, arrange::complex_to_json(cx).dump(2) + "\n");
                return 0;
            }
            // lar-json source
            auto is = open_input(conv_in);
            arrange::Json j = arrange::parse_json(is);
            if (conv_to == "lar-json") {
                write_text(conv_out, j.dump(2) + "\n");
                return 0;
            }
            if (!j.contains("boundary"))
                throw arrange::UnsupportedFormat("lar-json to mm needs a boundary object");
            std::filesystem::create_directories(conv_out);
            for (const auto& [key, op] : j["boundary"].items()) {
                std::ostringstream os;
                arrange::write_matrix_market(os, arrange::operator_from_json(op));
                write_text(conv_out + "/boundary_" + key + ".mtx", os.str());
            }
            return 0;
        }

        if (input_path.empty()) {
            std::cerr << app.help();
            return 2;
        }

        arrange::PipelineConfig cfg;
        cfg.dim = dim;
        cfg.eps = eps;
        cfg.eps_absolute = eps_abs;
        cfg.threads = threads;

        arrange::ArrangeReport rep;
        arrange::ChainComplexResult result;
        std::vector<std::pair<long, long>> eq1;

        if (dim == 2) {
            auto is = open_input(input_path);
            auto segments = arrange::read_segments(is);
            arrange::SegmentSet cleaned = arrange::validate_segments(segments);
            rep.dropped_segments = cleaned.dropped_zero_length + cleaned.dropped_duplicates;
            arrange::Box3 box;
            for (const auto& s : cleaned.segments) {
                box.expand({s.a.x, s.a.y, 0});
                box.expand({s.b.x, s.b.y, 0});
            }
            double eps_used = eps_abs ? eps : eps * std::max(box.diagonal(), 1e-300);
            rep.eps_used = eps_used;
            info("arranging " + std::to_string(cleaned.segments.size()) + " segments");
            arrange::PlanarComplexBuild build =
                arrange::arrangement2d_build(cleaned.segments, eps_used);
            result = std::move(build.result);
            eq1 = build.eq1;
        } else {
            auto is = open_input(input_path);
            auto inputs = arrange::read_lar_collection(is);
            info("arranging " + std::to_string(inputs.size()) + " complexes");
            arrange::Arrangement3DBuild build = arrange::arrangement3d_build(inputs, cfg, &rep);
            result = std::move(build.result);
            eq1 = build.eq1;
        }
        arrange::fill_report(result, rep);
        for (auto [nnz, twice] : eq1) rep.eq1 = rep.eq1 && nnz == twice;
        print_report(rep, result, report_euler, timings);

        if (!output_path.empty()) {
            write_text(output_path, arrange::result_to_json(result).dump(2) + "\n");
            info("result written to " + output_path);
        }
        if (!export_dir.empty()) export_mm(result, export_dir);
        if (check) return run_checks(rep, eq1);
        return 0;
    } catch (const arrange::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const arrange::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const arrange::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
