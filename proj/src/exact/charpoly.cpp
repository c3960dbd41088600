#include "slopes/charpoly.hpp"

#include <algorithm>
#include <cmath>

namespace slopes {

using modular::Montgomery;
using modular::u128;
using modular::u64;

namespace {

// Multiplication by a fixed Montgomery-form constant u, via Shoup's trick on
// the plain residue u R^-1 (which gives the same result as mm.mul(u, x)).
struct FixedMultiplier {
    FixedMultiplier(u64 u, const Montgomery& mm)
        : w(mm.from_mont(u)), pre(static_cast<u64>((static_cast<u128>(w) << 64) / mm.modulus())), p(mm.modulus())
    {
    }
    u64 operator()(u64 x) const
    {
        const u64 q = static_cast<u64>((static_cast<u128>(x) * pre) >> 64);
        const u64 r = w * x - q * p;
        return r >= p ? r - p : r;
    }
    u64 w, pre, p;
};

// det(xI - H) for H already in Montgomery form; H is destroyed.
std::vector<u64> charpoly_montgomery(std::vector<u64>& h, std::size_t n, const Montgomery& mm)
{
    auto at = [&](std::size_t r, std::size_t c) -> u64& { return h[r * n + c]; };
    std::vector<u64> mult(n, 0);
    const bool lazy = mm.modulus() < (u64{1} << 62);

    // Similarity transform to upper Hessenberg form.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && at(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(at(piv, c), at(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(at(r, piv), at(r, j + 1));
        }
        const u64 pinv = mm.inv(at(j + 1, j));
        const u64* prow = &at(j + 1, 0);
        std::fill(mult.begin(), mult.end(), 0);
        bool any = false;
        for (std::size_t i = j + 2; i < n; ++i) {
            if (at(i, j) == 0) continue;
            const u64 u = mm.mul(at(i, j), pinv);
            mult[i] = u;
            any = true;
            const FixedMultiplier times_u(u, mm);
            u64* irow = &at(i, 0);
            for (std::size_t c = j; c < n; ++c) irow[c] = mm.sub(irow[c], times_u(prow[c]));
        }
        if (!any) continue;
        // Inverse operation on columns: col_{j+1} += sum_i mult_i col_i.
        for (std::size_t r = 0; r < n; ++r) {
            const u64* row = &at(r, 0);
            // Products are below p^2 < 2^124, so four of them stay below p 2^64
            // and can share one Montgomery reduction.
            u64 s = row[j + 1];
            std::size_t i = j + 2;
            for (; lazy && i + 4 <= n; i += 4) {
                const u128 t = static_cast<u128>(mult[i]) * row[i] + static_cast<u128>(mult[i + 1]) * row[i + 1] +
                               static_cast<u128>(mult[i + 2]) * row[i + 2] + static_cast<u128>(mult[i + 3]) * row[i + 3];
                s = mm.add(s, mm.reduce(t));
            }
            for (; i < n; ++i) s = mm.add(s, mm.mul(mult[i], row[i]));
            at(r, j + 1) = s;
        }
    }

    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{t=i+1..m} h_{t,t-1}) p_{i-1}, 1-indexed.
    std::vector<std::vector<u64>> polys(n + 1);
    polys[0] = {mm.one()};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<u64> pm(m + 1, 0);
        const auto& prev = polys[m - 1];
        const u64 diag = at(m - 1, m - 1);
        for (std::size_t d = 0; d < prev.size(); ++d) {
            pm[d + 1] = mm.add(pm[d + 1], prev[d]);
            pm[d] = mm.sub(pm[d], mm.mul(diag, prev[d]));
        }
        u64 prod = mm.one();
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod = mm.mul(prod, at(i, i - 1));
            if (prod == 0) break;
            const u64 coeff = mm.mul(at(i - 1, m - 1), prod);
            if (coeff == 0) continue;
            const auto& q = polys[i - 1];
            for (std::size_t d = 0; d < q.size(); ++d) pm[d] = mm.sub(pm[d], mm.mul(coeff, q[d]));
        }
        polys[m] = std::move(pm);
    }
    std::vector<u64> out(n + 1);
    for (std::size_t d = 0; d <= n; ++d) out[d] = mm.from_mont(polys[n][d]);
    return out;
}

double log2_of(const Integer& z)
{
    if (z == 0) return -INFINITY;
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

}  // namespace

std::vector<u64> charpoly_mod(const Matrix<u64>& a, u64 p)
{
    if (!a.is_square()) throw std::invalid_argument("charpoly_mod: matrix not square");
    const std::size_t n = a.rows();
    Montgomery mm(p);
    std::vector<u64> h(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) h[r * n + c] = mm.to_mont(a(r, c));
    return charpoly_montgomery(h, n, mm);
}

IntPolynomial inverse_charpoly(const Matrix<Rational>& m, const CharpolyOptions& options)
{
    if (!m.is_square()) throw std::invalid_argument("inverse_charpoly: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return IntPolynomial::one();

    Integer lcm_den = 1;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), m(r, c).get_den_mpz_t());

    Matrix<Integer> a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = m(r, c).get_num() * (lcm_den / m(r, c).get_den());

    modular::CrtAccumulator crt(n + 1);
    Matrix<u64> reduced(n, n);
    std::size_t prime_index = 0;
    auto next_prime = [&]() {
        while (true) {
            const u64 q = modular::crt_prime(prime_index++);
            if (mpz_fdiv_ui(lcm_den.get_mpz_t(), q) != 0) return q;
        }
    };
    auto charpoly_of_a = [&](u64 prime) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) reduced(r, c) = mpz_fdiv_ui(a(r, c).get_mpz_t(), prime);
        return charpoly_mod(reduced, prime);
    };

    if (options.eigenvalue_bound_log2) {
        // Reconstruct the coefficients of det(1 - MX) themselves, which are
        // integers bounded by C(n,i) B^i: e_i(M) = c_{n-i}(A) / L^i mod q.
        const double lb = std::max(0.0, *options.eigenvalue_bound_log2);
        double bound_bits = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double binom = (std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0)) / std::log(2.0);
            bound_bits = std::max(bound_bits, binom + static_cast<double>(i) * lb);
        }
        const std::size_t needed_bits = static_cast<std::size_t>(std::ceil(bound_bits)) + 2;
        auto residues = [&](u64 prime) {
            auto res = charpoly_of_a(prime);
            const u64 linv = modular::inverse_mod(mpz_fdiv_ui(lcm_den.get_mpz_t(), prime), prime);
            std::vector<u64> out(n + 1);
            u64 scale = 1;
            for (std::size_t i = 0; i <= n; ++i) {
                out[i] = static_cast<u64>(static_cast<u128>(res[n - i]) * scale % prime);
                scale = static_cast<u64>(static_cast<u128>(scale) * linv % prime);
            }
            return out;
        };
        while (crt.modulus_bits() <= needed_bits) {
            const u64 prime = next_prime();
            crt.add(prime, residues(prime));
        }
        std::vector<Integer> coeffs = crt.symmetric();
        const u64 prime = next_prime();
        const auto check = residues(prime);
        for (std::size_t i = 0; i <= n; ++i)
            if (mpz_fdiv_ui(coeffs[i].get_mpz_t(), prime) != check[i])
                throw NonIntegralCharpoly("inverse_charpoly: coefficients exceed the eigenvalue bound or are not integral");
        return IntPolynomial(std::move(coeffs));
    }

    // Hadamard: |c_i| <= C(n,i) prod of the i largest column norms <= 2^n prod max(1, |col|).
    double hadamard = static_cast<double>(n);
    for (std::size_t c = 0; c < n; ++c) {
        Integer sq = 0;
        for (std::size_t r = 0; r < n; ++r) mpz_addmul(sq.get_mpz_t(), a(r, c).get_mpz_t(), a(r, c).get_mpz_t());
        hadamard += std::max(0.0, 0.5 * log2_of(sq));
    }
    const std::size_t needed_bits = static_cast<std::size_t>(std::ceil(hadamard)) + 2;

    prime_index = 0;
    auto plain_prime = [&]() { return modular::crt_prime(prime_index++); };
    while (crt.modulus_bits() <= needed_bits) {
        const u64 prime = plain_prime();
        crt.add(prime, charpoly_of_a(prime));
    }
    std::vector<Integer> monic = crt.symmetric();

    // One extra prime as a consistency check on the reconstruction.
    {
        const u64 prime = plain_prime();
        auto res = charpoly_of_a(prime);
        for (std::size_t i = 0; i <= n; ++i)
            if (mpz_fdiv_ui(monic[i].get_mpz_t(), prime) != res[i])
                throw std::logic_error("inverse_charpoly: CRT reconstruction failed verification");
    }

    // det(1 - MX) = sum_i c_{n-i}(A) / L^i X^i.
    std::vector<Integer> coeffs(n + 1);
    Integer scale = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        const Integer& v = monic[n - i];
        if (!mpz_divisible_p(v.get_mpz_t(), scale.get_mpz_t()))
            throw NonIntegralCharpoly("inverse_charpoly: coefficient of X^" + std::to_string(i) + " is not an integer");
        mpz_divexact(coeffs[i].get_mpz_t(), v.get_mpz_t(), scale.get_mpz_t());
        scale *= lcm_den;
    }
    return IntPolynomial(std::move(coeffs));
}

}  // namespace slopes
