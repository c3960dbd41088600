#pragma once

#include "slopes/arith.hpp"

#include <string>
#include <vector>

namespace slopes {

// Polynomial with exact integer coefficients, constant term first.
// Trailing zero coefficients are kept until normalize()/trimmed() is called,
// so that det(1 - TX) of a singular T still records its raw degree.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {}
    IntPolynomial(std::initializer_list<long> coefficients);

    static IntPolynomial one() { return IntPolynomial({1L}); }

    const std::vector<Integer>& coefficients() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
    // Zero past the stored range.
    Integer coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

    // Index of the last stored coefficient; -1 when nothing is stored.
    long raw_degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    // Degree after dropping trailing zeros; -1 for the zero polynomial.
    long effective_degree() const;

    void normalize();
    IntPolynomial trimmed() const;

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    // Equality ignores trailing zeros.
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b);

    std::string str() const;

private:
    std::vector<Integer> coeffs_;
};

}  // namespace slopes
