// File formats: LAR-JSON for geometric complexes and chain-complex results,
// raw segment lists, OBJ import, MatrixMarket operator export.
#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"
#include "arrange/lar.hpp"
#include "arrange/matrix_io.hpp"
#include "arrange/planar.hpp"

namespace arrange {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// LAR-JSON
//
// {
//   "dim": 2|3,
//   "V":  [[x,y(,z)], ...],
//   "EV": [[a,b], ...],
//   "FV": [[...], ...],          optional
//   "CV": [[...], ...],          optional
//   "boundary": {                optional
//     "1": {"shape":[m,n], "coo":[[i,j,v], ...]}, ...
//   }
// }
// ---------------------------------------------------------------------------

inline Json operator_to_json(const SignedOperator& m) {
    Json j;
    j["shape"] = {m.rows(), m.cols()};
    Json coo = Json::array();
    for (const auto& [i, jj, v] : m.to_triples()) coo.push_back({i, jj, v});
    j["coo"] = std::move(coo);
    return j;
}

inline SignedOperator operator_from_json(const Json& j) {
    if (!j.contains("shape") || !j.contains("coo")) throw ParseError("operator needs shape and coo");
    std::vector<std::array<int, 3>> triples;
    for (const auto& t : j["coo"])
        triples.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    return SignedOperator::from_triples(j["shape"].at(0).get<int>(), j["shape"].at(1).get<int>(),
                                        triples);
}

inline Json complex_to_json(const GeometricComplex& cx) {
    Json j;
    j["dim"] = cx.dim;
    Json v = Json::array();
    for (const auto& p : cx.V) {
        if (cx.dim == 2) v.push_back({p.x, p.y});
        else v.push_back({p.x, p.y, p.z});
    }
    j["V"] = std::move(v);
    j["EV"] = cx.EV;
    if (!cx.FV.empty()) j["FV"] = cx.FV;
    if (!cx.CV.empty()) j["CV"] = cx.CV;
    return j;
}

inline GeometricComplex complex_from_json(const Json& j) {
    GeometricComplex cx;
    if (!j.contains("dim") || !j.contains("V")) throw ParseError("LAR-JSON needs dim and V");
    cx.dim = j["dim"].get<int>();
    if (cx.dim != 2 && cx.dim != 3) throw ParseError("dim must be 2 or 3");
    for (const auto& row : j["V"]) {
        if (static_cast<int>(row.size()) != cx.dim)
            throw ParseError("vertex row width does not match dim");
        Vec3 p{row.at(0).get<double>(), row.at(1).get<double>(),
               cx.dim == 3 ? row.at(2).get<double>() : 0.0};
        cx.V.push_back(p);
    }
    auto read_cells = [&](const char* key, std::vector<CanonicalCell>& dst) {
        if (!j.contains(key)) return;
        for (const auto& cell : j[key]) dst.push_back(cell.get<CanonicalCell>());
    };
    read_cells("EV", cx.EV);
    read_cells("FV", cx.FV);
    read_cells("CV", cx.CV);
    cx.validate();
    return cx;
}

inline Json result_to_json(const ChainComplexResult& r) {
    Json j = complex_to_json(r.complex);
    Json b;
    for (size_t p = 0; p < r.boundary.size(); ++p)
        b[std::to_string(p + 1)] = operator_to_json(r.boundary[p]);
    j["boundary"] = std::move(b);
    return j;
}

inline Json parse_json(std::istream& is) {
    try {
        Json j;
        is >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// A LAR-JSON file holds one complex or an array of complexes (a collection).
inline std::vector<GeometricComplex> read_lar_collection(std::istream& is) {
    Json j = parse_json(is);
    std::vector<GeometricComplex> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(complex_from_json(item));
    } else {
        out.push_back(complex_from_json(j));
    }
    if (out.empty()) throw ParseError("empty input collection");
    return out;
}

// Segments come either as a raw array of [x1,y1,x2,y2] rows or as the
// 1-skeleton of LAR-JSON complexes.
inline std::vector<Segment> read_segments(std::istream& is) {
    Json j = parse_json(is);
    std::vector<Segment> segs;
    auto from_complex = [&](const Json& item) {
        GeometricComplex cx = complex_from_json(item);
        for (const auto& e : cx.EV)
            segs.push_back({cx.V[e[0]].xy(), cx.V[e[1]].xy()});
    };
    if (j.is_array()) {
        for (const auto& item : j) {
            if (item.is_array()) {
                if (item.size() != 4) throw ParseError("segment rows need 4 numbers");
                segs.push_back({{item.at(0).get<double>(), item.at(1).get<double>()},
                                {item.at(2).get<double>(), item.at(3).get<double>()}});
            } else {
                from_complex(item);
            }
        }
    } else {
        from_complex(j);
    }
    return segs;
}

// ---------------------------------------------------------------------------
// OBJ import: v/f records; faces keep their vertex lists verbatim in FV and
// their boundary edges are deduplicated into EV.
// ---------------------------------------------------------------------------

inline GeometricComplex read_obj(std::istream& is) {
    GeometricComplex cx;
    cx.dim = 3;
    std::set<std::array<int, 2>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        lineno += 1;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ss >> p.x >> p.y >> p.z))
                throw ParseError("bad vertex at line " + std::to_string(lineno));
            cx.V.push_back(p);
        } else if (tag == "f") {
            std::vector<int> loop;
            std::string tok;
            while (ss >> tok) {
                size_t slash = tok.find('/');
                int idx = std::stoi(slash == std::string::npos ? tok : tok.substr(0, slash));
                if (idx < 0) idx = static_cast<int>(cx.V.size()) + idx + 1;
                if (idx < 1 || idx > static_cast<int>(cx.V.size()))
                    throw ParseError("face index out of range at line " + std::to_string(lineno));
                loop.push_back(idx - 1);
            }
            if (loop.size() < 3)
                throw ParseError("face with fewer than 3 vertices at line " +
                                 std::to_string(lineno));
            for (size_t i = 0; i < loop.size(); ++i) {
                int a = loop[i], b = loop[(i + 1) % loop.size()];
                edges.insert({std::min(a, b), std::max(a, b)});
            }
            cx.FV.push_back(canonical(loop));
        }
    }
    for (const auto& e : edges) cx.EV.push_back({e[0], e[1]});
    cx.validate();
    return cx;
}

}  // namespace arrange
