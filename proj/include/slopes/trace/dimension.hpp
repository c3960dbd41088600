#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace slopes::trace {

// Prime factorization by trial division; n >= 1.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
// Index of Gamma0(N) in SL2(Z): N prod_{q | N} (1 + 1/q).
std::int64_t psi(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);

// Number of cusps of X0(N).
std::int64_t cusp_count(std::int64_t n);
// Elliptic points of order 2 and 3 on X0(N).
std::int64_t elliptic2(std::int64_t n);
std::int64_t elliptic3(std::int64_t n);

// dim S_k(Gamma0(M)) for even k >= 2; 0 for odd k.
std::int64_t dim_cuspforms(int k, std::int64_t level);

struct DimensionProfile {
    int k = 0;
    std::int64_t level = 0;
    std::int64_t dim_cusp = 0;
    // (q, dim S_k(Gamma0(level)) - 2 dim S_k(Gamma0(level/q))) for primes q exactly dividing the level.
    std::vector<std::pair<std::int64_t, std::int64_t>> dim_new;
};

DimensionProfile dimension_profile(int k, std::int64_t level);

// dim S_k(Gamma0(Np)) - 2 dim S_k(Gamma0(N)) for p not dividing N.
std::int64_t dim_p_new(int k, std::int64_t tame_level, std::int64_t p);

}  // namespace slopes::trace
