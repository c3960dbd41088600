#include "slopes/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace slopes {

std::vector<std::size_t> rref(Matrix<Rational>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    Rational tmp;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (m(r, j) == 0) continue;
                mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), m(r, j).get_mpq_t());
                mpq_sub(m(i, j).get_mpq_t(), m(i, j).get_mpq_t(), tmp.get_mpq_t());
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Kernel right_kernel(const Matrix<Rational>& m)
{
    Matrix<Rational> e = m;
    const auto pivots = rref(e);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : pivots) is_pivot[c] = 1;
    Kernel k;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) k.free_columns.push_back(c);
    k.basis = Matrix<Rational>(k.free_columns.size(), m.cols());
    for (std::size_t r = 0; r < k.free_columns.size(); ++r) {
        const std::size_t f = k.free_columns[r];
        k.basis(r, f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) k.basis(r, pivots[i]) = -e(i, f);
    }
    return k;
}

std::size_t rank(Matrix<Rational> m) { return rref(m).size(); }

SparseEchelon::SparseEchelon(int columns)
    : columns_(columns),
      row_of_pivot_(static_cast<std::size_t>(columns), -1),
      acc_(static_cast<std::size_t>(columns)),
      touched_(static_cast<std::size_t>(columns), 0)
{
}

void SparseEchelon::load(const SparseRow& row)
{
    for (const auto& [c, v] : row) {
        acc_[static_cast<std::size_t>(c)] = v;
        touched_[static_cast<std::size_t>(c)] = 1;
        touched_list_.push_back(c);
    }
}

void SparseEchelon::subtract_multiple(const Rational& factor, const SparseRow& row)
{
    Rational tmp;
    for (const auto& [c, v] : row) {
        const auto idx = static_cast<std::size_t>(c);
        if (!touched_[idx]) {
            touched_[idx] = 1;
            touched_list_.push_back(c);
        }
        mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), v.get_mpq_t());
        mpq_sub(acc_[idx].get_mpq_t(), acc_[idx].get_mpq_t(), tmp.get_mpq_t());
    }
}

void SparseEchelon::add_row(const SparseRow& row)
{
    if (finalized_) throw std::logic_error("SparseEchelon: add_row after finalize");
    touched_list_.clear();
    load(row);
    std::priority_queue<int, std::vector<int>, std::greater<>> heap(touched_list_.begin(), touched_list_.end());

    int new_pivot = -1;
    while (!heap.empty()) {
        const int c = heap.top();
        heap.pop();
        const auto idx = static_cast<std::size_t>(c);
        if (acc_[idx] == 0) continue;
        if (row_of_pivot_[idx] < 0) {
            new_pivot = c;
            break;
        }
        const std::size_t before = touched_list_.size();
        const Rational f = acc_[idx];
        subtract_multiple(f, pivot_rows_[static_cast<std::size_t>(row_of_pivot_[idx])]);
        for (std::size_t i = before; i < touched_list_.size(); ++i) heap.push(touched_list_[i]);
    }

    if (new_pivot >= 0) {
        SparseRow out;
        const Rational inv = 1 / acc_[static_cast<std::size_t>(new_pivot)];
        std::sort(touched_list_.begin(), touched_list_.end());
        for (int c : touched_list_) {
            if (c < new_pivot) continue;
            const auto idx = static_cast<std::size_t>(c);
            if (acc_[idx] == 0) continue;
            out.emplace_back(c, acc_[idx] * inv);
        }
        row_of_pivot_[static_cast<std::size_t>(new_pivot)] = static_cast<int>(pivot_rows_.size());
        pivot_rows_.push_back(std::move(out));
        pivot_col_.push_back(new_pivot);
    }
    for (int c : touched_list_) {
        acc_[static_cast<std::size_t>(c)] = 0;
        touched_[static_cast<std::size_t>(c)] = 0;
    }
    touched_list_.clear();
}

void SparseEchelon::finalize()
{
    if (finalized_) return;
    std::vector<std::size_t> order(pivot_rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_col_[a] > pivot_col_[b]; });

    for (std::size_t ri : order) {
        SparseRow& row = pivot_rows_[ri];
        const int own = pivot_col_[ri];
        bool needs = false;
        for (const auto& [c, v] : row)
            if (c != own && row_of_pivot_[static_cast<std::size_t>(c)] >= 0) needs = true;
        if (!needs) continue;
        touched_list_.clear();
        load(row);
        for (const auto& [c, v] : row) {
            if (c == own || row_of_pivot_[static_cast<std::size_t>(c)] < 0) continue;
            const Rational f = acc_[static_cast<std::size_t>(c)];
            if (f == 0) continue;
            subtract_multiple(f, pivot_rows_[static_cast<std::size_t>(row_of_pivot_[static_cast<std::size_t>(c)])]);
        }
        std::sort(touched_list_.begin(), touched_list_.end());
        SparseRow out;
        for (int c : touched_list_) {
            const auto idx = static_cast<std::size_t>(c);
            if (acc_[idx] != 0) out.emplace_back(c, acc_[idx]);
            acc_[idx] = 0;
            touched_[idx] = 0;
        }
        touched_list_.clear();
        row = std::move(out);
    }
    finalized_ = true;
}

}  // namespace slopes
