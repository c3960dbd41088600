#include "slopes/trace/dimension.hpp"

#include <algorithm>
#include <stdexcept>

namespace slopes::trace {

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("factor: n must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out{1};
    for (auto [q, e] : factor(n)) {
        const std::size_t base = out.size();
        std::int64_t qq = 1;
        for (int i = 1; i <= e; ++i) {
            qq *= q;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * qq);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t r = n;
    for (auto [q, e] : factor(n)) r = r / q * (q - 1);
    return r;
}

std::int64_t psi(std::int64_t n)
{
    std::int64_t r = n;
    for (auto [q, e] : factor(n)) r = r / q * (q + 1);
    return r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t cusp_count(std::int64_t n)
{
    std::int64_t c = 0;
    for (std::int64_t d : divisors(n)) c += euler_phi(gcd(d, n / d));
    return c;
}

std::int64_t elliptic2(std::int64_t n)
{
    if (n % 4 == 0) return 0;
    std::int64_t r = 1;
    for (auto [q, e] : factor(n)) {
        if (q == 2) continue;
        r *= (q % 4 == 1) ? 2 : 0;
    }
    return r;
}

std::int64_t elliptic3(std::int64_t n)
{
    if (n % 9 == 0) return 0;
    std::int64_t r = 1;
    for (auto [q, e] : factor(n)) {
        if (q == 3) continue;
        r *= (q % 3 == 1) ? 2 : 0;
    }
    return r;
}

std::int64_t dim_cuspforms(int k, std::int64_t level)
{
    if (level < 1) throw std::invalid_argument("dim_cuspforms: level must be positive");
    if (k < 2 || k % 2) return 0;
    const std::int64_t mu = psi(level);
    const std::int64_t e2 = elliptic2(level);
    const std::int64_t e3 = elliptic3(level);
    const std::int64_t c = cusp_count(level);
    // 12 g = 12 + mu - 3 e2 - 4 e3 - 6 c
    const std::int64_t twelve_g = 12 + mu - 3 * e2 - 4 * e3 - 6 * c;
    if (twelve_g % 12) throw std::logic_error("dim_cuspforms: non-integral genus");
    const std::int64_t g = twelve_g / 12;
    if (k == 2) return g;
    return (k - 1) * (g - 1) + (k / 2 - 1) * c + e2 * (k / 4) + e3 * (k / 3);
}

std::int64_t dim_p_new(int k, std::int64_t tame_level, std::int64_t p)
{
    if (tame_level % p == 0) throw std::invalid_argument("dim_p_new: p divides the tame level");
    return dim_cuspforms(k, tame_level * p) - 2 * dim_cuspforms(k, tame_level);
}

DimensionProfile dimension_profile(int k, std::int64_t level)
{
    DimensionProfile prof{k, level, dim_cuspforms(k, level), {}};
    for (auto [q, e] : factor(level))
        if (e == 1) prof.dim_new.emplace_back(q, dim_p_new(k, level / q, q));
    return prof;
}

}  // namespace slopes::trace
