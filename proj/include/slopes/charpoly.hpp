#pragma once

#include "slopes/arith.hpp"
#include "slopes/matrix.hpp"
#include "slopes/modular.hpp"
#include "slopes/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace slopes {

// Raised when det(1 - MX) has a non-integral coefficient. For a Hecke matrix
// this means the basis computation upstream is broken.
class NonIntegralCharpoly : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CharpolyOptions {
    // log2 of an a-priori bound on the absolute values of the eigenvalues
    // (e.g. a Ramanujan-Petersson bound for Hecke operators). When set, the
    // coefficients of det(1 - MX) are reconstructed directly from the bound
    // C(n,i) B^i; they must be integers, else NonIntegralCharpoly is thrown.
    // Without it, the Hadamard bound on the denominator-cleared matrix is used.
    std::optional<double> eigenvalue_bound_log2;
};

// det(1 - MX) for a square matrix of exact rationals, computed by
// multimodular Hessenberg reduction of the denominator-cleared matrix.
// The raw degree of the result is the dimension of M.
IntPolynomial inverse_charpoly(const Matrix<Rational>& m, const CharpolyOptions& options = {});

// det(xI - A) mod p, coefficients constant-first, plain residues.
std::vector<modular::u64> charpoly_mod(const Matrix<modular::u64>& a, modular::u64 p);

}  // namespace slopes
