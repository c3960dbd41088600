#include "slopes/polynomial.hpp"

#include <sstream>

namespace slopes {

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients)
{
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients) coeffs_.emplace_back(c);
}

long IntPolynomial::effective_degree() const
{
    long d = raw_degree();
    while (d >= 0 && coeffs_[static_cast<std::size_t>(d)] == 0) --d;
    return d;
}

void IntPolynomial::normalize()
{
    coeffs_.resize(static_cast<std::size_t>(effective_degree() + 1));
}

IntPolynomial IntPolynomial::trimmed() const
{
    IntPolynomial t = *this;
    t.normalize();
    return t;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.coeffs_.empty() || b.coeffs_.empty()) return IntPolynomial();
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

bool operator==(const IntPolynomial& a, const IntPolynomial& b)
{
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.coefficient(i) != b.coefficient(i)) return false;
    return true;
}

std::string IntPolynomial::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Integer& c = coeffs_[i];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i >= 1) os << "X";
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace slopes
