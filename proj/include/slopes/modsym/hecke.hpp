#pragma once

#include "slopes/arith.hpp"
#include "slopes/matrix.hpp"
#include "slopes/modsym/manin.hpp"
#include "slopes/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace slopes::modsym {

// Cuspidal part of the sign +1 quotient: kernel of the boundary map to the
// cusp classes of Gamma0(M) (with c ~ -c identified).
class CuspidalPlusSpace {
public:
    const ManinSymbolSpace& parent() const { return *parent_; }
    std::shared_ptr<const ManinSymbolSpace> parent_ptr() const { return parent_; }

    // Rows are basis vectors in quotient coordinates. Each row has a 1 in its
    // own coordinate column and 0 in the other coordinate columns, so a kernel
    // vector's coordinates are its entries at coordinate_columns().
    const Matrix<Rational>& basis() const { return basis_; }
    const std::vector<std::size_t>& coordinate_columns() const { return coordinate_columns_; }
    std::size_t dimension() const { return basis_.rows(); }
    std::size_t cusp_classes() const { return cusp_classes_; }

    // Boundary of the i-th quotient basis vector, as (class, coefficient) pairs.
    const std::vector<std::pair<int, int>>& boundary(std::size_t i) const { return boundary_[i]; }

private:
    friend CuspidalPlusSpace cuspidal_plus_subspace(std::shared_ptr<const ManinSymbolSpace> space);

    std::shared_ptr<const ManinSymbolSpace> parent_;
    Matrix<Rational> basis_;
    std::vector<std::size_t> coordinate_columns_;
    std::size_t cusp_classes_ = 0;
    std::vector<std::vector<std::pair<int, int>>> boundary_;
};

// Throws ConsistencyError if the dimension differs from dim S_k(Gamma0(M)).
CuspidalPlusSpace cuspidal_plus_subspace(std::shared_ptr<const ManinSymbolSpace> space);

struct HeckeMatrix {
    char label = 'T';  // 'T' when p does not divide the level, 'U' otherwise
    std::int64_t index = 0;
    Matrix<Rational> matrix;  // row i is the image of basis vector i

    std::string name() const { return std::string(1, label) + std::to_string(index); }
};

// Matrix of T_n / U_n on the cuspidal plus space; n must be prime.
HeckeMatrix hecke_matrix(const CuspidalPlusSpace& space, std::int64_t n);

// Hecke operator on the whole sign +1 quotient: row j is (denominator *
// image of basis vector j). Exposed for tests.
Matrix<Integer> hecke_on_quotient(const ManinSymbolSpace& space, std::int64_t p);

// log2 of the Ramanujan-Petersson bound 2 p^((k-1)/2) on Hecke eigenvalues.
double hecke_eigenvalue_bound_log2(int k, std::int64_t p);

// det(1 - T_p X) (or U_p) on S_k(Gamma0(M)), untrimmed (raw degree = dim).
IntPolynomial charpoly_cuspidal(int k, std::int64_t level, std::int64_t p);

// Same for several primes, sharing one space build.
std::vector<IntPolynomial> charpolys_cuspidal(int k, std::int64_t level, const std::vector<std::int64_t>& primes);

}  // namespace slopes::modsym
