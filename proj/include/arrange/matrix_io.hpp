// Operator serialization: COO triple lists and MatrixMarket coordinate files.
#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arrange/chains.hpp"
#include "arrange/errors.hpp"

namespace arrange {

// 0-based (i, j, v) triples in column-major order.
inline std::vector<std::array<int, 3>> to_coo(const SignedOperator& m) { return m.to_triples(); }

inline SignedOperator from_coo(int rows, int cols, const std::vector<std::array<int, 3>>& coo) {
    return SignedOperator::from_triples(rows, cols, coo);
}

// MatrixMarket "coordinate integer general" with the usual 1-based indices.
inline void write_matrix_market(std::ostream& os, const SignedOperator& m) {
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << m.rows() << " " << m.cols() << " " << m.nnz() << "\n";
    for (const auto& [i, j, v] : m.to_triples())
        os << i + 1 << " " << j + 1 << " " << v << "\n";
}

inline SignedOperator read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty MatrixMarket stream");
    if (line.rfind("%%MatrixMarket", 0) != 0)
        throw ParseError("missing MatrixMarket header");
    {
        std::istringstream hs(line);
        std::string tag, object, format, field;
        hs >> tag >> object >> format >> field;
        if (object != "matrix" || format != "coordinate" || field != "integer")
            throw UnsupportedFormat("expected coordinate integer matrix, got: " + line);
    }
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream ss(line);
    int rows = 0, cols = 0, nnz = 0;
    if (!(ss >> rows >> cols >> nnz)) throw ParseError("bad MatrixMarket size line");
    std::vector<std::array<int, 3>> triples;
    triples.reserve(nnz);
    for (int k = 0; k < nnz; ++k) {
        int i, j, v;
        if (!(is >> i >> j >> v)) throw ParseError("truncated MatrixMarket data");
        triples.push_back({i - 1, j - 1, v});
    }
    return SignedOperator::from_triples(rows, cols, triples);
}

}  // namespace arrange
