// Sparse signed chains and boundary-operator matrices over {-1,0,+1}.
//
// A p-chain is a sparse coordinate vector with coefficients restricted to
// {-1,+1} (zero entries are never stored).  Boundary operators are kept in
// compressed sparse column form with the same coefficient restriction.
// Products are computed with exact integer arithmetic; any entry that
// survives cancellation with magnitude >= 2 signals incoherently oriented
// input and raises CoefficientOverflow.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arrange/errors.hpp"

namespace arrange {

class SignedChain {
public:
    SignedChain() = default;
    SignedChain(int dim, int basis_size) : dim_(dim), basis_size_(basis_size) {
        if (dim < 0 || basis_size < 0) throw DimensionMismatch("invalid chain shape");
    }

    static SignedChain unit(int dim, int basis_size, int index, int sign) {
        SignedChain c(dim, basis_size);
        c.set(index, sign);
        return c;
    }

    int dim() const { return dim_; }
    int basis_size() const { return basis_size_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<std::pair<int, int>>& entries() const& { return entries_; }
    // rvalue chains hand their entries out by value, so iterating the result
    // of a call chain stays valid
    std::vector<std::pair<int, int>> entries() && { return std::move(entries_); }

    int coefficient(int index) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                   [](const auto& e, int i) { return e.first < i; });
        return (it != entries_.end() && it->first == index) ? it->second : 0;
    }

    // Sets a coefficient; value 0 erases the entry.
    void set(int index, int value) {
        if (index < 0 || index >= basis_size_)
            throw IndexOutOfRange("chain index " + std::to_string(index) + " out of range");
        if (value != -1 && value != 0 && value != 1)
            throw CoefficientOverflow("chain coefficient " + std::to_string(value) +
                                      " outside {-1,0,+1}");
        auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                   [](const auto& e, int i) { return e.first < i; });
        if (it != entries_.end() && it->first == index) {
            if (value == 0) entries_.erase(it);
            else it->second = value;
        } else if (value != 0) {
            entries_.insert(it, {index, value});
        }
    }

    SignedChain operator-() const {
        SignedChain r = *this;
        for (auto& e : r.entries_) e.second = -e.second;
        return r;
    }

    // Exact integer sum; out-of-range coefficients are an error.
    friend SignedChain operator+(const SignedChain& a, const SignedChain& b) {
        if (a.basis_size_ != b.basis_size_)
            throw DimensionMismatch("chain sum over different bases");
        SignedChain r(a.dim_, a.basis_size_);
        r.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto ia = a.entries_.begin(), ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end()) {
            int idx;
            int v = 0;
            if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
                idx = ia->first; v = ia->second; ++ia;
            } else if (ia == a.entries_.end() || ib->first < ia->first) {
                idx = ib->first; v = ib->second; ++ib;
            } else {
                idx = ia->first; v = ia->second + ib->second; ++ia; ++ib;
            }
            if (v == 0) continue;
            if (v < -1 || v > 1)
                throw CoefficientOverflow("chain sum entry " + std::to_string(idx) +
                                          " has coefficient " + std::to_string(v));
            r.entries_.push_back({idx, v});
        }
        return r;
    }

    friend SignedChain operator-(const SignedChain& a, const SignedChain& b) { return a + (-b); }

    // same coordinates over the same basis; the grading tag is advisory
    bool operator==(const SignedChain& o) const {
        return basis_size_ == o.basis_size_ && entries_ == o.entries_;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        s.reserve(entries_.size());
        for (const auto& e : entries_) s.push_back(e.first);
        return s;
    }

private:
    int dim_ = 0;
    int basis_size_ = 0;
    std::vector<std::pair<int, int>> entries_;  // sorted by index, values in {-1,+1}
};

// Signed sparse matrix in CSC form; the matrix of a map C_p -> C_{p-1}.
class SignedOperator {
public:
    SignedOperator() : col_ptr_(1, 0) {}
    SignedOperator(int rows, int cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("invalid operator shape");
    }

    static SignedOperator from_triples(int rows, int cols,
                                       const std::vector<std::array<int, 3>>& triples) {
        std::vector<std::vector<std::pair<int, int>>> cols_data(cols);
        for (const auto& t : triples) {
            auto [i, j, v] = t;
            if (i < 0 || i >= rows || j < 0 || j >= cols)
                throw IndexOutOfRange("triple (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") out of range");
            if (v != -1 && v != 1)
                throw CoefficientOverflow("operator entry " + std::to_string(v) +
                                          " outside {-1,+1}");
            cols_data[j].push_back({i, v});
        }
        SignedOperator m(rows, cols);
        for (int j = 0; j < cols; ++j) {
            auto& cd = cols_data[j];
            std::sort(cd.begin(), cd.end());
            for (size_t k = 1; k < cd.size(); ++k)
                if (cd[k].first == cd[k - 1].first)
                    throw Error("duplicate operator entry at row " + std::to_string(cd[k].first));
            for (auto [i, v] : cd) {
                row_idx_of(m).push_back(i);
                val_of(m).push_back(static_cast<int8_t>(v));
            }
            m.col_ptr_[j + 1] = static_cast<int>(row_idx_of(m).size());
        }
        return m;
    }

    static SignedOperator from_columns(int rows, const std::vector<SignedChain>& columns) {
        SignedOperator m(rows, static_cast<int>(columns.size()));
        for (size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].basis_size() != rows)
                throw DimensionMismatch("column basis does not match row count");
            for (auto [i, v] : columns[j].entries()) {
                m.row_idx_.push_back(i);
                m.val_.push_back(static_cast<int8_t>(v));
            }
            m.col_ptr_[j + 1] = static_cast<int>(m.row_idx_.size());
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(row_idx_.size()); }

    int coefficient(int i, int j) const {
        for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
            if (row_idx_[k] == i) return val_[k];
        return 0;
    }

    SignedChain column(int j, int dim = 0) const {
        check_col(j);
        SignedChain c(dim, rows_);
        for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) c.set(row_idx_[k], val_[k]);
        return c;
    }

    std::vector<int> column_support(int j) const {
        check_col(j);
        return {row_idx_.begin() + col_ptr_[j], row_idx_.begin() + col_ptr_[j + 1]};
    }

    // Sparse matrix-vector product over the integers with the {-1,0,+1} clamp.
    SignedChain apply(const SignedChain& c) const {
        if (c.basis_size() != cols_)
            throw DimensionMismatch("operator with " + std::to_string(cols_) +
                                    " columns applied to chain over basis of size " +
                                    std::to_string(c.basis_size()));
        std::map<int, int> acc;
        for (auto [j, cv] : c.entries())
            for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) acc[row_idx_[k]] += cv * val_[k];
        SignedChain r(c.dim() > 0 ? c.dim() - 1 : 0, rows_);
        for (auto [i, v] : acc) {
            if (v == 0) continue;
            if (v < -1 || v > 1)
                throw CoefficientOverflow("result entry " + std::to_string(i) +
                                          " has magnitude " + std::to_string(std::abs(v)));
            r.set(i, v);
        }
        return r;
    }

    SignedOperator transpose() const {
        std::vector<std::array<int, 3>> triples;
        triples.reserve(row_idx_.size());
        for (int j = 0; j < cols_; ++j)
            for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
                triples.push_back({j, row_idx_[k], val_[k]});
        return from_triples(cols_, rows_, triples);
    }

    bool operator==(const SignedOperator&) const = default;

    std::vector<std::array<int, 3>> to_triples() const {
        std::vector<std::array<int, 3>> t;
        t.reserve(row_idx_.size());
        for (int j = 0; j < cols_; ++j)
            for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
                t.push_back({row_idx_[k], j, val_[k]});
        return t;
    }

    friend SignedOperator append_column(const SignedOperator& m, const SignedChain& c) {
        if (c.basis_size() != m.rows_)
            throw DimensionMismatch("appended column basis does not match row count");
        SignedOperator r = m;
        for (auto [i, v] : c.entries()) {
            r.row_idx_.push_back(i);
            r.val_.push_back(static_cast<int8_t>(v));
        }
        r.cols_ += 1;
        r.col_ptr_.push_back(static_cast<int>(r.row_idx_.size()));
        return r;
    }

    friend SignedOperator remove_column(const SignedOperator& m, int j) {
        m.check_col(j);
        SignedOperator r(m.rows_, m.cols_ - 1);
        r.col_ptr_.assign(1, 0);
        for (int c = 0; c < m.cols_; ++c) {
            if (c == j) continue;
            for (int k = m.col_ptr_[c]; k < m.col_ptr_[c + 1]; ++k) {
                r.row_idx_.push_back(m.row_idx_[k]);
                r.val_.push_back(m.val_[k]);
            }
            r.col_ptr_.push_back(static_cast<int>(r.row_idx_.size()));
        }
        return r;
    }

    friend SignedOperator negate_column(const SignedOperator& m, int j) {
        m.check_col(j);
        SignedOperator r = m;
        for (int k = r.col_ptr_[j]; k < r.col_ptr_[j + 1]; ++k) r.val_[k] = -r.val_[k];
        return r;
    }

private:
    void check_col(int j) const {
        if (j < 0 || j >= cols_)
            throw IndexOutOfRange("column " + std::to_string(j) + " out of range");
    }
    static std::vector<int>& row_idx_of(SignedOperator& m) { return m.row_idx_; }
    static std::vector<int8_t>& val_of(SignedOperator& m) { return m.val_; }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> col_ptr_;
    std::vector<int> row_idx_;
    std::vector<int8_t> val_;
};

// Binary matrix in CSR form (implicit value 1); rows are cell supports.
class UnsignedMatrix {
public:
    UnsignedMatrix() : row_ptr_(1, 0) {}
    UnsignedMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    static UnsignedMatrix from_rows(const std::vector<std::vector<int>>& rows, int cols) {
        UnsignedMatrix m(static_cast<int>(rows.size()), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            std::vector<int> r = rows[i];
            std::sort(r.begin(), r.end());
            for (size_t k = 0; k < r.size(); ++k) {
                if (r[k] < 0 || r[k] >= cols)
                    throw IndexOutOfRange("matrix column index " + std::to_string(r[k]) +
                                          " out of range");
                if (k > 0 && r[k] == r[k - 1])
                    throw Error("duplicate index in row " + std::to_string(i));
            }
            m.col_idx_.insert(m.col_idx_.end(), r.begin(), r.end());
            m.row_ptr_[i + 1] = static_cast<int>(m.col_idx_.size());
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(col_idx_.size()); }

    std::vector<int> row_support(int i) const {
        check_row(i);
        return {col_idx_.begin() + row_ptr_[i], col_idx_.begin() + row_ptr_[i + 1]};
    }

    bool at(int i, int j) const {
        check_row(i);
        return std::binary_search(col_idx_.begin() + row_ptr_[i], col_idx_.begin() + row_ptr_[i + 1], j);
    }

    bool operator==(const UnsignedMatrix&) const = default;

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }

private:
    void check_row(int i) const {
        if (i < 0 || i >= rows_) throw IndexOutOfRange("row " + std::to_string(i) + " out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_idx_;
};

// Sparse matrix with nonnegative integer entries (CSR); product counts land here.
class IntegerMatrix {
public:
    IntegerMatrix() : row_ptr_(1, 0) {}
    IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(col_idx_.size()); }

    int at(int i, int j) const {
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            if (col_idx_[k] == j) return val_[k];
        return 0;
    }

    void push_row(const std::vector<std::pair<int, int>>& entries) {
        for (auto [j, v] : entries) {
            col_idx_.push_back(j);
            val_.push_back(v);
        }
        row_ptr_.push_back(static_cast<int>(col_idx_.size()));
        rows_ += 1;
    }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<int>& values() const { return val_; }

    static IntegerMatrix with_cols(int cols) {
        IntegerMatrix m;
        m.cols_ = cols;
        return m;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_idx_;
    std::vector<int> val_;
};

// SpGEMM with integer count accumulation: entry (i,j) of the result is
// |row_i(A) ∩ row_j(B)|, i.e. the product A * B^t of characteristic matrices.
inline IntegerMatrix unsigned_product(const UnsignedMatrix& a, const UnsignedMatrix& b) {
    if (a.cols() != b.cols())
        throw DimensionMismatch("unsigned_product: " + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.cols()) + " columns");
    // transpose b once: column -> rows of b containing it
    std::vector<std::vector<int>> by_col(b.cols());
    for (int i = 0; i < b.rows(); ++i)
        for (int j : b.row_support(i)) by_col[j].push_back(i);

    IntegerMatrix out = IntegerMatrix::with_cols(b.rows());
    std::vector<int> acc(b.rows(), 0);
    std::vector<int> touched;
    for (int i = 0; i < a.rows(); ++i) {
        touched.clear();
        for (int j : a.row_support(i))
            for (int r : by_col[j]) {
                if (acc[r] == 0) touched.push_back(r);
                acc[r] += 1;
            }
        std::sort(touched.begin(), touched.end());
        std::vector<std::pair<int, int>> entries;
        entries.reserve(touched.size());
        for (int r : touched) {
            entries.push_back({r, acc[r]});
            acc[r] = 0;
        }
        out.push_row(entries);
    }
    return out;
}

// Keeps exactly the positions holding value k, as a binary matrix.
inline UnsignedMatrix filter_entries(const IntegerMatrix& m, int k) {
    if (k < 1) throw Error("filter threshold must be >= 1");
    std::vector<std::vector<int>> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p)
            if (m.values()[p] == k) rows[i].push_back(m.col_idx()[p]);
    return UnsignedMatrix::from_rows(rows, m.cols());
}

// Unsigned boundary application, optionally mod 2 (the Z/2Z chain convention).
inline std::vector<int> apply_unsigned(const UnsignedMatrix& m, const std::vector<int>& x,
                                       bool mod2) {
    if (static_cast<int>(x.size()) != m.cols())
        throw DimensionMismatch("apply_unsigned: vector size does not match columns");
    std::vector<int> y(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        int s = 0;
        for (int j : m.row_support(i)) s += x[j];
        y[i] = mod2 ? (s % 2) : s;
    }
    return y;
}

}  // namespace arrange
