#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace slopes {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::int64_t n);

std::string to_string(const Integer& n);
// "a/b", or "a" when the denominator is one.
std::string to_string(const Rational& r);

Rational parse_rational(const std::string& text);

// p-adic valuation normalized so that v_p(p) = 1. Zero has valuation +infinity.
class PAdicValuation {
public:
    explicit PAdicValuation(Rational value) : value_(std::move(value)) {}

    static PAdicValuation infinity() { return PAdicValuation(); }

    bool is_infinite() const { return !value_.has_value(); }
    // Undefined for the infinite valuation.
    const Rational& value() const { return *value_; }

    friend bool operator==(const PAdicValuation& a, const PAdicValuation& b);
    friend std::partial_ordering operator<=>(const PAdicValuation& a, const PAdicValuation& b);
    friend PAdicValuation operator+(const PAdicValuation& a, const PAdicValuation& b);

    std::string str() const;

private:
    PAdicValuation() = default;
    std::optional<Rational> value_;
};

// Throws std::invalid_argument when p is not prime.
PAdicValuation valuation(const Rational& r, std::int64_t p);

// Exponent of p in a non-zero integer; p is assumed prime.
std::int64_t valuation_of_nonzero(const Integer& n, std::int64_t p);

}  // namespace slopes
