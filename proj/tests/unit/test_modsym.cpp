#include <doctest.h>

#include "oracles.hpp"
#include "slopes/charpoly.hpp"
#include "slopes/modsym/hecke.hpp"
#include "slopes/trace/dimension.hpp"

#include <numeric>

using namespace slopes;
using namespace slopes::modsym;

namespace {

CuspidalPlusSpace cusp_space(int k, std::int64_t level)
{
    return cuspidal_plus_subspace(std::make_shared<const ManinSymbolSpace>(build_space(k, level)));
}

// Genus of X0(N) for N <= 30.
constexpr int kGenus[31] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0,
                            1, 0, 1, 1, 1, 2, 2, 1, 0, 2, 1, 2, 2, 3};

}  // namespace

TEST_CASE("P1 has psi(M) points and index_of inverts point")
{
    for (std::int64_t m = 1; m <= 60; ++m) {
        const P1List p1(m);
        CHECK(static_cast<std::int64_t>(p1.size()) == trace::psi(m));
        for (std::size_t i = 0; i < p1.size(); ++i) {
            const auto [c, d] = p1.point(i);
            CHECK(p1.index_of(c, d) == static_cast<int>(i));
            // Unit scaling does not move the class.
            for (std::int64_t u = 1; u < m; ++u)
                if (std::gcd(u, m) == 1) CHECK(p1.index_of(u * c, u * d) == static_cast<int>(i));
        }
    }
}

TEST_CASE("Heilbronn matrices have determinant p")
{
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 59}) {
        const auto hs = heilbronn_cremona(p);
        CHECK(!hs.empty());
        for (const auto& h : hs) CHECK(h.det() == p);
    }
}

TEST_CASE("monomial action is a right action")
{
    const int w = 6;
    const Mat2 g{2, 1, 1, 1}, h{1, -1, 3, -2};
    const MonomialAction ag(g, w), ah(h, w), agh(g * h, w);
    for (int i = 0; i <= w; ++i) {
        // (P|g)|h
        std::vector<Integer> lhs(static_cast<std::size_t>(w + 1));
        const auto first = ag.image(i);
        for (int j = 0; j <= w; ++j) {
            const auto second = ah.image(j);
            for (int s = 0; s <= w; ++s) lhs[static_cast<std::size_t>(s)] += first[static_cast<std::size_t>(j)] * second[static_cast<std::size_t>(s)];
        }
        CHECK(lhs == agh.image(i));
    }
}

TEST_CASE("cuspidal plus dimensions")
{
    CHECK(cusp_space(2, 11).dimension() == 1);
    CHECK(cusp_space(12, 1).dimension() == 1);
    CHECK(cusp_space(4, 1).dimension() == 0);
    CHECK(cusp_space(2, 22).dimension() == 2);
    CHECK(cusp_space(2, 1).dimension() == 0);
    for (std::int64_t n = 1; n <= 30; ++n) CHECK(cusp_space(2, n).dimension() == static_cast<std::size_t>(kGenus[n]));
    // Level 1, k >= 4: dim S_k = floor(k/12) - [k = 2 mod 12].
    for (int k = 4; k <= 60; k += 2) CHECK(cusp_space(k, 1).dimension() == static_cast<std::size_t>(k / 12 - (k % 12 == 2)));
}

TEST_CASE("dimension formula matches the genus table")
{
    for (std::int64_t n = 1; n <= 30; ++n) CHECK(trace::dim_cuspforms(2, n) == kGenus[n]);
    CHECK(trace::dim_cuspforms(12, 1) == 1);
    CHECK(trace::dim_cuspforms(3, 11) == 0);
}

TEST_CASE("bad arguments")
{
    CHECK_THROWS_AS(build_space(3, 11), std::invalid_argument);
    CHECK_THROWS_AS(build_space(0, 11), std::invalid_argument);
    CHECK_THROWS_AS(build_space(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(hecke_matrix(cusp_space(2, 11), 4), std::invalid_argument);
}

TEST_CASE("Hecke matrix examples")
{
    const auto delta = cusp_space(12, 1);
    const auto t2 = hecke_matrix(delta, 2);
    REQUIRE(t2.matrix.rows() == 1);
    CHECK(t2.matrix(0, 0) == -24);
    CHECK(t2.name() == "T2");

    const auto x11 = cusp_space(2, 11);
    CHECK(hecke_matrix(x11, 2).matrix(0, 0) == -2);
    CHECK(hecke_matrix(x11, 3).matrix(0, 0) == -1);
    const auto u11 = hecke_matrix(x11, 11);
    CHECK(u11.name() == "U11");
    CHECK(u11.matrix(0, 0) == 1);
}

TEST_CASE("charpoly_cuspidal examples")
{
    CHECK(charpoly_cuspidal(12, 1, 2) == IntPolynomial({1, 24}));
    CHECK(charpoly_cuspidal(2, 22, 2) == IntPolynomial({1, 2, 2}));
    const auto empty = charpoly_cuspidal(10, 1, 7);
    CHECK(empty == IntPolynomial::one());
    CHECK(empty.raw_degree() == 0);
    CHECK_THROWS_AS(charpoly_cuspidal(2, 11, 9), std::invalid_argument);
}

TEST_CASE("level 1 weight 12 eigenvalues match the Delta q-expansion")
{
    const auto tau = oracle::delta_expansion(20);
    CHECK(tau[2] == -24);
    CHECK(tau[3] == 252);
    const auto space = cusp_space(12, 1);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19})
        CHECK(hecke_matrix(space, p).matrix(0, 0) == Rational(tau[static_cast<std::size_t>(p)]));
}

TEST_CASE("level 11 weight 2 eigenvalues match the eta product")
{
    const auto a = oracle::level11_expansion(40);
    CHECK(a[1] == 1);
    CHECK(a[2] == -2);
    CHECK(a[3] == -1);
    const auto space = cusp_space(2, 11);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        CHECK(hecke_matrix(space, p).matrix(0, 0) == Rational(a[static_cast<std::size_t>(p)]));
}

TEST_CASE("Hecke operators commute and have integral characteristic polynomials")
{
    const std::vector<std::int64_t> primes{2, 3, 5, 7};
    for (int k = 2; k <= 8; k += 2)
        for (std::int64_t level = 1; level <= 30; ++level) {
            const auto space = cusp_space(k, level);
            if (space.dimension() == 0) continue;
            std::vector<Matrix<Rational>> ms;
            for (auto p : primes) ms.push_back(hecke_matrix(space, p).matrix);
            for (std::size_t i = 0; i < ms.size(); ++i) {
                // Raises on a non-integral coefficient.
                CHECK_NOTHROW(inverse_charpoly(ms[i]));
                for (std::size_t j = i + 1; j < ms.size(); ++j) {
                    INFO("k=" << k << " N=" << level << " p=" << primes[i] << " q=" << primes[j]);
                    CHECK(ms[i] * ms[j] == ms[j] * ms[i]);
                }
            }
        }
}

TEST_CASE("U_p at level Np for weight 2 old forms satisfies the refinement quadratic")
{
    // T_2 on S_2(11) is -2, so U_2 on the 2-old part of S_2(22) has
    // det(1 - U X) = 1 + 2X + 2X^2.
    const auto space = cusp_space(2, 22);
    const auto u2 = hecke_matrix(space, 2).matrix;
    Matrix<Rational> q = u2 * u2;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) q(i, j) += 2 * u2(i, j) + (i == j ? 2 : 0);
    CHECK(q == Matrix<Rational>(2, 2));
}
