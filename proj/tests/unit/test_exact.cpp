#include <doctest.h>

#include "oracles.hpp"
#include "slopes/charpoly.hpp"
#include "slopes/newton.hpp"

using namespace slopes;

namespace {

SlopeMultiset slopes_of(std::initializer_list<std::pair<Rational, std::int64_t>> items)
{
    SlopeMultiset s;
    for (const auto& [v, m] : items) s.add(v, m);
    return s;
}

Matrix<Rational> from_rows(const std::vector<std::vector<long>>& rows)
{
    Matrix<Rational> m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

IntPolynomial as_int_poly(const std::vector<Rational>& c)
{
    std::vector<Integer> out;
    for (const auto& x : c) {
        REQUIRE(x.get_den() == 1);
        out.push_back(x.get_num());
    }
    return IntPolynomial(out);
}

}  // namespace

TEST_CASE("valuation examples")
{
    CHECK(valuation(Rational(24), 2) == PAdicValuation(Rational(3)));
    CHECK(valuation(Rational(0), 5).is_infinite());
    CHECK(valuation(Rational(-2), 2) == PAdicValuation(Rational(1)));
    CHECK(valuation(Rational(3, 8), 2) == PAdicValuation(Rational(-3)));
    CHECK(valuation(Rational(7), 5) == PAdicValuation(Rational(0)));
    CHECK_THROWS_AS(valuation(Rational(4), 4), std::invalid_argument);
}

TEST_CASE("valuation is additive and matches repeated division")
{
    for (int trial = 0; trial < 500; ++trial) {
        const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7, 11, 13}[static_cast<std::size_t>(oracle::uniform(0, 5))];
        Integer a = oracle::uniform(1, 1'000'000);
        Integer b = oracle::uniform(1, 1'000'000);
        if (oracle::uniform(0, 1)) a = -a;
        CHECK(valuation(Rational(a), p) == PAdicValuation(Rational(oracle::vp(a, p))));
        CHECK(valuation(Rational(a * b), p) == valuation(Rational(a), p) + valuation(Rational(b), p));
        const auto inf = valuation(Rational(0), p);
        CHECK((inf + valuation(Rational(a), p)).is_infinite());
        CHECK(valuation(Rational(a), p) < inf);
    }
}

TEST_CASE("newton polygon examples")
{
    CHECK(newton_slopes(IntPolynomial({1, 24}), 2) == slopes_of({{3, 1}}));
    CHECK(newton_slopes(IntPolynomial({1, 2, 2}), 2) == slopes_of({{Rational(1, 2), 2}}));
    CHECK(newton_slopes(IntPolynomial::one(), 7).empty());
    CHECK(newton_slopes(IntPolynomial({1, 3, 9}), 3) == slopes_of({{1, 2}}));
    CHECK(newton_slopes(IntPolynomial({1, 6, 8}), 2) == slopes_of({{1, 1}, {2, 1}}));
    CHECK_THROWS_AS(newton_slopes(IntPolynomial({2, 1}), 3), std::invalid_argument);
}

TEST_CASE("collinear points merge into one segment")
{
    // 1 + 2X + 4X^2 + 8X^3 at p = 2: all points on the line of slope 1.
    const auto poly = newton_polygon(IntPolynomial({1, 2, 4, 8}), 2);
    REQUIRE(poly.segments.size() == 1);
    CHECK(poly.segments[0].slope == 1);
    CHECK(poly.segments[0].length == 3);
}

TEST_CASE("trailing zero coefficients are ignored by the polygon")
{
    // det(1 - TX) of a singular T: raw degree 3, effective degree 1.
    const IntPolynomial f({1, -3, 0, 0});
    CHECK(f.raw_degree() == 3);
    CHECK(f.effective_degree() == 1);
    CHECK(newton_slopes(f, 3) == slopes_of({{1, 1}}));
}

TEST_CASE("newton slopes: product law, total valuation, root oracle")
{
    const std::vector<std::int64_t> primes{2, 3, 5, 7};
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t p = primes[static_cast<std::size_t>(oracle::uniform(0, 3))];
        std::vector<Integer> roots_f, roots_g;
        const auto f = oracle::random_integer_root_poly(5, 400, &roots_f);
        const auto g = oracle::random_integer_root_poly(5, 400, &roots_g);
        auto sf = newton_slopes(f, p);
        const auto sg = newton_slopes(g, p);
        const auto sfg = newton_slopes(f * g, p);
        auto merged = sf;
        merged.merge(sg);
        CHECK(sfg == merged);

        // Slopes of prod (1 - rX) are v_p(r) over the non-zero roots.
        SlopeMultiset expect;
        for (const auto& r : roots_f)
            if (r != 0) expect.add(oracle::vp(r, p));
        CHECK(sf == expect);

        // sum slope * multiplicity equals v_p of the last non-zero coefficient.
        const auto ft = f.trimmed();
        Rational weighted = 0;
        for (const auto& e : sf.entries()) weighted += e.slope * e.multiplicity;
        const Integer last = ft.coefficient(static_cast<std::size_t>(ft.effective_degree()));
        CHECK(weighted == oracle::vp(last, p));
    }
}

TEST_CASE("slope multiset helpers")
{
    SlopeMultiset s = slopes_of({{0, 2}, {Rational(1, 2), 2}, {1, 1}});
    CHECK(s.total() == 5);
    CHECK(s.count_open(0, 1) == 2);
    CHECK(s.open_interval(0, 1) == slopes_of({{Rational(1, 2), 2}}));
    CHECK(!s.all_integral());
    CHECK(s.all_in({0, Rational(1, 2), 1}));
    CHECK(s.str() == "{0 x2, 1/2 x2, 1 x1}");
}

TEST_CASE("inverse charpoly examples")
{
    CHECK(inverse_charpoly(Matrix<Rational>::identity(2)) == IntPolynomial({1, -2, 1}));
    const auto z = inverse_charpoly(Matrix<Rational>(3, 3));
    CHECK(z == IntPolynomial::one());
    CHECK(z.raw_degree() == 3);
    CHECK(inverse_charpoly(from_rows({{0, -2}, {1, 0}})) == IntPolynomial({1, 0, 2}));
    CHECK(inverse_charpoly(Matrix<Rational>(0, 0)) == IntPolynomial::one());
}

TEST_CASE("non-integral charpoly is reported")
{
    Matrix<Rational> m(1, 1);
    m(0, 0) = Rational(1, 2);
    CHECK_THROWS_AS(inverse_charpoly(m), NonIntegralCharpoly);
}

TEST_CASE("inverse charpoly agrees with Faddeev-LeVerrier and is multiplicative on blocks")
{
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::uniform(1, 7));
        Matrix<Rational> a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = oracle::uniform(-1000, 1000);
        const auto fa = inverse_charpoly(a);
        CHECK(fa == as_int_poly(oracle::faddeev_leverrier(a)));
        CHECK(fa.raw_degree() == static_cast<long>(n));

        const auto m = static_cast<std::size_t>(oracle::uniform(1, 5));
        Matrix<Rational> b(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) b(i, j) = oracle::uniform(-50, 50);
        CHECK(inverse_charpoly(direct_sum(a, b)) == fa * inverse_charpoly(b));
    }
}

TEST_CASE("eigenvalue-bound route matches the Hadamard route")
{
    // P D P^-1 with unimodular P: integer eigenvalues in D, all bounded by 2^10.
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3;
        Matrix<Rational> p = Matrix<Rational>::identity(n);
        Matrix<Rational> pinv = Matrix<Rational>::identity(n);
        // Elementary operations keep the inverse exact.
        for (int op = 0; op < 6; ++op) {
            const auto i = static_cast<std::size_t>(oracle::uniform(0, 2));
            auto j = static_cast<std::size_t>(oracle::uniform(0, 1));
            if (j >= i) ++j;
            const long t = oracle::uniform(-3, 3);
            Matrix<Rational> e = Matrix<Rational>::identity(n), einv = Matrix<Rational>::identity(n);
            e(i, j) = t;
            einv(i, j) = -t;
            p = p * e;
            pinv = einv * pinv;
        }
        Matrix<Rational> d(n, n);
        std::vector<Integer> roots;
        for (std::size_t i = 0; i < n; ++i) {
            d(i, i) = oracle::uniform(-1000, 1000);
            roots.push_back(d(i, i).get_num());
        }
        const Matrix<Rational> a = p * d * pinv;
        CharpolyOptions opt;
        opt.eigenvalue_bound_log2 = 10.0;
        const auto bounded = inverse_charpoly(a, opt);
        CHECK(bounded == inverse_charpoly(a));
        IntPolynomial expect = IntPolynomial::one();
        for (const auto& r : roots) expect = expect * IntPolynomial({Integer(1), Integer(-r)});
        CHECK(bounded == expect);
    }
}
