#include "slopes/arith.hpp"

#include <stdexcept>

namespace slopes {

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    Integer z(std::to_string(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational r;
    if (r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw std::invalid_argument("not a rational number: '" + text + "'");
    r.canonicalize();
    return r;
}

bool operator==(const PAdicValuation& a, const PAdicValuation& b)
{
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return a.value() == b.value();
}

std::partial_ordering operator<=>(const PAdicValuation& a, const PAdicValuation& b)
{
    if (a.is_infinite() && b.is_infinite()) return std::partial_ordering::equivalent;
    if (a.is_infinite()) return std::partial_ordering::greater;
    if (b.is_infinite()) return std::partial_ordering::less;
    int c = cmp(a.value(), b.value());
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

PAdicValuation operator+(const PAdicValuation& a, const PAdicValuation& b)
{
    if (a.is_infinite() || b.is_infinite()) return PAdicValuation::infinity();
    return PAdicValuation(Rational(a.value() + b.value()));
}

std::string PAdicValuation::str() const
{
    return is_infinite() ? std::string("+inf") : to_string(value());
}

std::int64_t valuation_of_nonzero(const Integer& n, std::int64_t p)
{
    Integer rest;
    const Integer pp(static_cast<long>(p));
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

PAdicValuation valuation(const Rational& r, std::int64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("valuation: " + std::to_string(p) + " is not prime");
    if (r == 0) return PAdicValuation::infinity();
    return PAdicValuation(Rational(valuation_of_nonzero(r.get_num(), p) - valuation_of_nonzero(r.get_den(), p)));
}

}  // namespace slopes
