#pragma once

#include "slopes/arith.hpp"
#include "slopes/linalg.hpp"
#include "slopes/modsym/heilbronn.hpp"
#include "slopes/modsym/p1list.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace slopes::modsym {

// Raised when a computed space disagrees with the dimension formula or an
// internal identity of the presentation.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Weight-k modular symbols for Gamma0(M), sign +1 quotient.
//
// Generators are Manin symbols [X^i Y^(k-2-i), (c:d)] with i in 0..k-2 and
// (c:d) in P^1(Z/M), indexed point * (k-1) + i. The presentation imposes
//   x + x|sigma = 0,  x + x|tau + x|tau^2 = 0,  x - x|star = 0
// under the right action [P, (c,d)]|h = [P|h, (c,d) h].
//
// The two-term relations (sigma, star) are solved by signed union-find;
// every generator is then +-1 times a "free" symbol or zero. The three-term
// relations become sparse rows over the free symbols, and the quotient basis
// is the set of non-pivot free symbols of their echelon form.
class ManinSymbolSpace {
public:
    int weight() const { return weight_; }
    std::int64_t level() const { return level_; }
    const P1List& p1() const { return p1_; }

    std::size_t num_generators() const { return free_of_gen_.size(); }
    std::size_t num_free() const { return free_rep_.size(); }
    std::size_t num_relations() const { return relation_rows_; }
    // Dimension of the sign +1 quotient.
    std::size_t dimension() const { return basis_.size(); }

    int generator_index(int i, int point) const { return point * (weight_ - 1) + i; }
    int generator_power(int gen) const { return gen % (weight_ - 1); }
    int generator_point(int gen) const { return gen / (weight_ - 1); }

    // Free symbol of a generator and its sign; free index -1 means zero.
    int free_of(int gen) const { return free_of_gen_[static_cast<std::size_t>(gen)]; }
    int sign_of(int gen) const { return sign_of_gen_[static_cast<std::size_t>(gen)]; }
    // Generator equal to +1 times the free symbol.
    int free_representative(int f) const { return free_rep_[static_cast<std::size_t>(f)]; }

    // Free symbols forming the quotient basis, and the inverse map (-1 for pivots).
    const std::vector<int>& basis() const { return basis_; }
    int basis_index_of_free(int f) const { return basis_index_[static_cast<std::size_t>(f)]; }

    // A pivot free symbol f equals sum_j c_j e_j / denominator() over basis
    // indices j, with the integer row returned here.
    const std::vector<std::pair<int, Integer>>& pivot_expression(int f) const
    {
        return pivot_expr_[static_cast<std::size_t>(f)];
    }
    const Integer& denominator() const { return denominator_; }

    // Coordinates of a generator in the quotient basis (rational, dense).
    std::vector<Rational> generator_coordinates(int gen) const;

private:
    friend ManinSymbolSpace build_space(int k, std::int64_t level);

    ManinSymbolSpace(int k, std::int64_t level) : weight_(k), level_(level), p1_(level) {}

    int weight_;
    std::int64_t level_;
    P1List p1_;
    std::vector<int> free_of_gen_;
    std::vector<signed char> sign_of_gen_;
    std::vector<int> free_rep_;
    std::size_t relation_rows_ = 0;
    std::vector<int> basis_;
    std::vector<int> basis_index_;
    std::vector<std::vector<std::pair<int, Integer>>> pivot_expr_;
    Integer denominator_ = 1;
};

// Throws std::invalid_argument for odd or too small k, or level < 1.
ManinSymbolSpace build_space(int k, std::int64_t level);

}  // namespace slopes::modsym
