#include <doctest.h>

#include "oracles.hpp"
#include "slopes/theory.hpp"
#include "slopes/trace/dimension.hpp"

#include <map>

using namespace slopes;
using namespace slopes::theory;

namespace {

SlopeMultiset slopes_of(std::initializer_list<std::pair<Rational, std::int64_t>> items)
{
    SlopeMultiset s;
    for (const auto& [v, m] : items) s.add(v, m);
    return s;
}

CharpolyProvider& modsym_provider()
{
    static auto p = make_provider(Engine::modsym);
    return *p;
}

// Answers from a fixed table and counts lookups; anything else falls through.
class TableProvider : public CharpolyProvider {
public:
    std::map<std::tuple<int, std::int64_t, std::int64_t>, IntPolynomial> table;
    int calls = 0;

    IntPolynomial charpoly(int k, std::int64_t level, std::int64_t p) override
    {
        ++calls;
        const auto it = table.find({k, level, p});
        if (it != table.end()) return it->second;
        return modsym_provider().charpoly(k, level, p);
    }
};

}  // namespace

TEST_CASE("HeckeContext preconditions")
{
    CHECK_THROWS_AS(HeckeContext::make(4, 11, 2), std::invalid_argument);
    CHECK_THROWS_AS(HeckeContext::make(3, 6, 2), std::invalid_argument);
    CHECK_THROWS_AS(HeckeContext::make(3, 0, 2), std::invalid_argument);
    CHECK_NOTHROW(HeckeContext::make(3, 1, 2));
}

TEST_CASE("T_p slope examples")
{
    auto& pr = modsym_provider();
    CHECK(tp_slopes(HeckeContext::make(2, 11, 2), pr).slopes == slopes_of({{1, 1}}));
    CHECK(tp_slopes(HeckeContext::make(2, 1, 12), pr).slopes == slopes_of({{3, 1}}));
    CHECK(tp_slopes(HeckeContext::make(3, 11, 2), pr).slopes == slopes_of({{0, 1}}));
}

TEST_CASE("odd weight is the zero space without a provider call")
{
    TableProvider pr;
    const auto t = tp_slopes(HeckeContext::make(3, 11, 3), pr);
    CHECK(t.dim == 0);
    CHECK(t.slopes.empty());
    CHECK(pr.calls == 0);
}

TEST_CASE("regularity examples")
{
    auto& pr = modsym_provider();
    const auto v211 = is_regular(2, 11, pr);
    CHECK(!v211.regular);
    CHECK(v211.j == 2);
    CHECK(is_regular(3, 11, pr).regular);
    CHECK(is_regular(5, 1, pr).regular);
    CHECK(regularity_weights(2) == std::vector<int>{2, 4});
    CHECK(regularity_weights(3) == std::vector<int>{2, 3});
    CHECK(regularity_weights(7) == std::vector<int>{2, 3, 4, 5});
    const auto w59 = regularity_weights(59);
    REQUIRE(w59.size() == 30);
    CHECK(w59.front() == 2);
    CHECK(w59.back() == 31);
}

TEST_CASE("a zero eigenvalue violates regularity")
{
    TableProvider pr;
    pr.table[{2, 11, 3}] = IntPolynomial({1, 0});
    const auto v = is_regular(3, 11, pr);
    CHECK(!v.regular);
    CHECK(v.j == 2);
    CHECK(v.table[0].zero_eigenvalues == 1);
}

TEST_CASE("refinement pairs")
{
    using P = std::pair<Rational, Rational>;
    CHECK(refinement_pair(Rational(1), 2) == P{Rational(1, 2), Rational(1, 2)});
    CHECK(refinement_pair(Rational(0), 2) == P{0, 1});
    CHECK(refinement_pair(Rational(2), 4) == P{Rational(3, 2), Rational(3, 2)});
    CHECK(refinement_pair(Rational(3), 4) == P{Rational(3, 2), Rational(3, 2)});
    CHECK(refinement_pair(Rational(1), 4) == P{1, 2});
    CHECK(refinement_pair(std::nullopt, 6) == P{Rational(5, 2), Rational(5, 2)});
}

TEST_CASE("refinement pairs are the slopes of X^2 - aX + p^(k-1)")
{
    // Newton polygon of the reversed polynomial 1 - aX + p^(k-1) X^2 has the same slopes.
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[static_cast<std::size_t>(oracle::uniform(0, 3))];
        const int k = 2 * static_cast<int>(oracle::uniform(1, 8));
        Integer a = oracle::uniform(-100000, 100000);
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
        const IntPolynomial f(std::vector<Integer>{1, -a, pk});
        const auto s = newton_slopes(f, p);
        std::optional<Rational> v;
        if (a != 0) v = Rational(oracle::vp(a, p));
        const auto [lo, hi] = refinement_pair(v, k);
        SlopeMultiset expect;
        expect.add(lo);
        expect.add(hi);
        CHECK(s == expect);
        CHECK(lo + hi == k - 1);
    }
}

TEST_CASE("U_p assembly examples")
{
    auto& pr = modsym_provider();
    const auto a = up_assembly(HeckeContext::make(2, 11, 2), pr);
    REQUIRE(a.old_pairs.size() == 1);
    CHECK(a.old_pairs[0].first == Rational(1, 2));
    CHECK(a.old_pairs[0].second == Rational(1, 2));
    CHECK(a.new_multiplicity == 0);
    CHECK(a.combined == slopes_of({{Rational(1, 2), 2}}));
    CHECK(up_slopes_direct(HeckeContext::make(2, 11, 2), pr) == a.combined);

    CHECK(up_slopes_direct(HeckeContext::make(2, 1, 2), pr).empty());

    const auto b = up_assembly(HeckeContext::make(3, 11, 2), pr);
    CHECK(b.new_multiplicity == trace::dim_cuspforms(2, 33) - 2);
    CHECK(b.new_slope == 0);
    CHECK(b.combined == slopes_of({{0, 2}, {1, 1}}));
    CHECK(up_slopes_direct(HeckeContext::make(3, 11, 2), pr) == b.combined);

    const auto c = up_assembly(HeckeContext::make(3, 5, 4), pr);
    CHECK(c.new_slope == 1);
    CHECK(c.new_multiplicity == trace::dim_p_new(4, 5, 3));
    CHECK(c.combined.total() == trace::dim_cuspforms(4, 15));
}

TEST_CASE("witness search examples")
{
    auto& pr = modsym_provider();
    const auto w = find_fractional_witness(2, 11, 10, pr);
    REQUIRE(w);
    CHECK(w->k == 2);
    CHECK(w->slope == Rational(1, 2));
    CHECK(w->source == WitnessSource::old_refinement);
    CHECK(!find_fractional_witness(3, 11, 20, pr));
}

TEST_CASE("minimal witness report")
{
    auto& pr = modsym_provider();
    const auto r = minimal_witness_report(2, 11, 10, pr);
    CHECK(r.verdict.j == 2);
    REQUIRE(r.witness);
    CHECK(r.witness->k == 2);
    CHECK(r.prediction == Prediction::k_equals_j);
    CHECK(prediction_text(r.prediction) == "k = j");
    CHECK_THROWS_AS(minimal_witness_report(3, 11, 10, pr), std::invalid_argument);
    CHECK(default_k_max(59, 16) == 132);
    CHECK(default_k_max(2, 2) == 50);
}

TEST_CASE("weight sequence")
{
    CHECK(weight_sequence(0, 3, 2) == 20);
    CHECK(weight_sequence(2, 5, 0) == 8);
    CHECK(weight_sequence(14, 59, 0) == 74);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7, 59}[static_cast<std::size_t>(oracle::uniform(0, 4))];
        const std::int64_t j = oracle::uniform(0, 100);
        const std::int64_t n = oracle::uniform(1, 12);
        const Integer k = weight_sequence(j, p, n);
        Integer pn;
        mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
        // k = 2 + j mod p^n and mod (p - 1): the weights converge p-adically and stay in one component.
        CHECK((k - 2 - j) % pn == 0);
        CHECK((k - 2 - j) % (p - 1) == 0);
        CHECK(weight_sequence(j, p, n + 1) - k == (p - 1) * (p - 1) * pn);
    }
}

TEST_CASE("classicality filter")
{
    CHECK(classicality_filter(Rational(1, 2), 2));
    CHECK(!classicality_filter(3, 4));
    CHECK(classicality_filter(0, 2));
    CHECK(!classicality_filter(1, 2));
}

TEST_CASE("p = 2 refinement check at level 11")
{
    const auto r = p2_refinement_check(11, modsym_provider());
    CHECK(!r.verdict.regular);
    REQUIRE(!r.cases.empty());
    CHECK(r.cases[0].k == 2);
    CHECK(r.cases[0].pair == std::pair<Rational, Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(r.cases[0].fractional);
    CHECK(r.fractional_everywhere);
    CHECK_THROWS_AS(p2_refinement_check(22, modsym_provider()), std::invalid_argument);
}

TEST_CASE("engines")
{
    CHECK(parse_engine("trace") == Engine::trace);
    CHECK(engine_name(Engine::both) == "both");
    CHECK_THROWS_AS(parse_engine("magic"), std::invalid_argument);
    auto both = make_provider(Engine::both);
    CHECK(both->charpoly(12, 1, 2) == IntPolynomial({1, 24}));
    CHECK(both->charpoly(2, 22, 2) == IntPolynomial({1, 2, 2}));
}
