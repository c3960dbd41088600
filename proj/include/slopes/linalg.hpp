#pragma once

#include "slopes/arith.hpp"
#include "slopes/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace slopes {

using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column

// Reduced row echelon form over Q, in place. Pivots are the leftmost
// non-zero column of each row (deterministic). Returns the pivot columns.
std::vector<std::size_t> rref(Matrix<Rational>& m);

// Basis of {x : m x = 0}, one row per free column; row r has a 1 in
// free column r and zeros in the other free columns.
struct Kernel {
    Matrix<Rational> basis;
    std::vector<std::size_t> free_columns;
};
Kernel right_kernel(const Matrix<Rational>& m);

std::size_t rank(Matrix<Rational> m);

// Incremental echelonization of sparse rows over Q. Rows are reduced as they
// arrive; each pivot is the smallest surviving column. finalize() performs
// back substitution, leaving every pivot row supported on its own pivot and
// the non-pivot columns only.
class SparseEchelon {
public:
    explicit SparseEchelon(int columns);

    void add_row(const SparseRow& row);
    void finalize();

    int columns() const { return columns_; }
    std::size_t rank() const { return pivot_rows_.size(); }
    bool is_pivot(int col) const { return row_of_pivot_[static_cast<std::size_t>(col)] >= 0; }
    // Pivot row for a pivot column, normalized so the pivot entry is 1.
    const SparseRow& pivot_row(int col) const
    {
        return pivot_rows_[static_cast<std::size_t>(row_of_pivot_[static_cast<std::size_t>(col)])];
    }

private:
    void load(const SparseRow& row);
    void subtract_multiple(const Rational& factor, const SparseRow& row);

    int columns_;
    std::vector<int> row_of_pivot_;
    std::vector<SparseRow> pivot_rows_;
    std::vector<int> pivot_col_;

    // Dense scratch accumulator.
    std::vector<Rational> acc_;
    std::vector<char> touched_;
    std::vector<int> touched_list_;
    bool finalized_ = false;
};

}  // namespace slopes
