#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's algorithms; only its number types are shared.

#include "slopes/arith.hpp"
#include "slopes/matrix.hpp"
#include "slopes/polynomial.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using slopes::Integer;
using slopes::Rational;

// Coefficients of q^0..q^prec of prod_m (1 - q^(step m))^power.
inline std::vector<Integer> eta_power_product(int step, int power, int prec)
{
    std::vector<Integer> f(static_cast<std::size_t>(prec + 1));
    f[0] = 1;
    for (int m = step; m <= prec; m += step)
        for (int e = 0; e < power; ++e)
            for (int i = prec; i >= m; --i) f[static_cast<std::size_t>(i)] -= f[static_cast<std::size_t>(i - m)];
    return f;
}

inline std::vector<Integer> times(const std::vector<Integer>& a, const std::vector<Integer>& b)
{
    std::vector<Integer> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Coefficients of q^n (index n) of Delta = q prod (1 - q^m)^24.
inline std::vector<Integer> delta_expansion(int prec)
{
    const auto f = eta_power_product(1, 24, prec);
    std::vector<Integer> out(static_cast<std::size_t>(prec + 1));
    for (int n = 1; n <= prec; ++n) out[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n - 1)];
    return out;
}

// q prod (1 - q^m)^2 (1 - q^(11m))^2, the newform of level 11.
inline std::vector<Integer> level11_expansion(int prec)
{
    const auto f = times(eta_power_product(1, 2, prec), eta_power_product(11, 2, prec));
    std::vector<Integer> out(static_cast<std::size_t>(prec + 1));
    for (int n = 1; n <= prec; ++n) out[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n - 1)];
    return out;
}

// det(1 - MX) by Faddeev-LeVerrier over Q.
inline std::vector<Rational> faddeev_leverrier(const slopes::Matrix<Rational>& a)
{
    const std::size_t n = a.rows();
    // charpoly x^n + c_1 x^(n-1) + ... + c_n; then det(1 - MX) = 1 + c_1 X + ... + c_n X^n.
    std::vector<Rational> c(n + 1);
    c[0] = 1;
    slopes::Matrix<Rational> m(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_(k-1) + c_(k-1) I
        slopes::Matrix<Rational> next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
        m = next;
        const slopes::Matrix<Rational> am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

// Weighted count of reduced forms of discriminant -n, checked one (a, b, c)
// at a time against the reduction conditions.
inline Rational hurwitz_brute(std::int64_t n)
{
    if (n <= 0) return 0;
    Rational total = 0;
    for (std::int64_t a = 1; 3 * a * a <= n; ++a)
        for (std::int64_t b = -a; b <= a; ++b) {
            const std::int64_t num = b * b + n;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if ((b == -a) || (a == c && b < 0)) continue;
            if (a == c && b == 0)
                total += Rational(1, 2);
            else if (a == b && b == c)
                total += Rational(1, 3);
            else
                total += 1;
        }
    return total;
}

// Exponent of p in a non-zero integer, by repeated division.
inline std::int64_t vp(Integer x, std::int64_t p)
{
    if (x < 0) x = -x;
    std::int64_t e = 0;
    const Integer pp(static_cast<long>(p));
    while (x % pp == 0) {
        x /= pp;
        ++e;
    }
    return e;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20240531);
    return g;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

// Random det(1 - TX) with integer roots: prod (1 - r_i X).
inline slopes::IntPolynomial random_integer_root_poly(int max_degree, long bound, std::vector<Integer>* roots = nullptr)
{
    slopes::IntPolynomial f = slopes::IntPolynomial::one();
    const int d = static_cast<int>(uniform(0, max_degree));
    for (int i = 0; i < d; ++i) {
        const long r = uniform(-bound, bound);
        if (roots) roots->push_back(r);
        f = f * slopes::IntPolynomial({1L, -r});
    }
    return f;
}

}  // namespace oracle
