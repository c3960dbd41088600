#include "slopes/theory.hpp"

#include "slopes/modsym/hecke.hpp"
#include "slopes/trace/dimension.hpp"
#include "slopes/trace/trace_formula.hpp"

#include <stdexcept>

namespace slopes::theory {

HeckeContext HeckeContext::make(std::int64_t p, std::int64_t N, int k)
{
    if (!is_prime(p)) throw std::invalid_argument("HeckeContext: " + std::to_string(p) + " is not prime");
    if (N < 1) throw std::invalid_argument("HeckeContext: level must be positive");
    if (N % p == 0)
        throw std::invalid_argument("HeckeContext: p = " + std::to_string(p) + " divides N = " + std::to_string(N));
    if (k < 2) throw std::invalid_argument("HeckeContext: weight must be at least 2");
    return HeckeContext{p, N, k};
}

Engine parse_engine(const std::string& name)
{
    if (name == "modsym") return Engine::modsym;
    if (name == "trace") return Engine::trace;
    if (name == "both") return Engine::both;
    throw std::invalid_argument("unknown engine '" + name + "' (expected modsym, trace or both)");
}

std::string engine_name(Engine e)
{
    switch (e) {
    case Engine::modsym: return "modsym";
    case Engine::trace: return "trace";
    case Engine::both: return "both";
    }
    return "?";
}

namespace {

class ModsymProvider : public CharpolyProvider {
public:
    IntPolynomial charpoly(int k, std::int64_t level, std::int64_t p) override
    {
        return modsym::charpoly_cuspidal(k, level, p);
    }
};

class TraceProvider : public CharpolyProvider {
public:
    explicit TraceProvider(bool compare) : compare_(compare) {}

    IntPolynomial charpoly(int k, std::int64_t level, std::int64_t p) override
    {
        if (level % p == 0) return modsym::charpoly_cuspidal(k, level, p);
        IntPolynomial f = trace::charpoly_from_traces(k, level, p);
        if (compare_) {
            const IntPolynomial g = modsym::charpoly_cuspidal(k, level, p);
            if (!(f == g))
                throw modsym::ConsistencyError("engines disagree at k=" + std::to_string(k) + ", N=" +
                                               std::to_string(level) + ", p=" + std::to_string(p) + ": trace " +
                                               f.str() + ", modsym " + g.str());
        }
        return f;
    }

private:
    bool compare_;
};

bool is_integral(const Rational& r)
{
    return r.get_den() == 1;
}

Rational half(std::int64_t n)
{
    Rational r(n, 2);
    r.canonicalize();
    return r;
}

}  // namespace

std::shared_ptr<CharpolyProvider> make_provider(Engine engine)
{
    switch (engine) {
    case Engine::modsym: return std::make_shared<ModsymProvider>();
    case Engine::trace: return std::make_shared<TraceProvider>(false);
    case Engine::both: return std::make_shared<TraceProvider>(true);
    }
    throw std::invalid_argument("make_provider: bad engine");
}

TpSlopes tp_slopes(const HeckeContext& ctx, CharpolyProvider& provider)
{
    TpSlopes out;
    if (ctx.k % 2) {
        out.charpoly = IntPolynomial::one();
        return out;
    }
    out.dim = trace::dim_cuspforms(ctx.k, ctx.N);
    out.charpoly = provider.charpoly(ctx.k, ctx.N, ctx.p);
    if (out.charpoly.raw_degree() != out.dim)
        throw modsym::ConsistencyError("tp_slopes: characteristic polynomial of degree " +
                                       std::to_string(out.charpoly.raw_degree()) + " on a space of dimension " +
                                       std::to_string(out.dim));
    out.slopes = newton_slopes(out.charpoly, ctx.p);
    out.zero_eigenvalues = out.dim - out.charpoly.effective_degree();
    return out;
}

std::vector<int> regularity_weights(std::int64_t p)
{
    if (p == 2) return {2, 4};
    std::vector<int> ks;
    for (std::int64_t k = 2; k <= (p + 3) / 2; ++k) ks.push_back(static_cast<int>(k));
    return ks;
}

RegularityVerdict is_regular(std::int64_t p, std::int64_t N, CharpolyProvider& provider)
{
    RegularityVerdict v;
    v.p = p;
    v.N = N;
    for (int k : regularity_weights(p)) {
        const TpSlopes t = tp_slopes(HeckeContext::make(p, N, k), provider);
        RegularityRow row{k, t.slopes, t.dim, t.zero_eigenvalues, false};
        std::vector<Rational> allowed{0};
        if (p == 2 && k == 4) allowed.push_back(1);
        row.violation = t.zero_eigenvalues > 0 || t.slopes.total() != t.dim || !t.slopes.all_in(allowed);
        if (row.violation && !v.j) v.j = k;
        v.table.push_back(std::move(row));
    }
    v.regular = !v.j.has_value();
    return v;
}

std::pair<Rational, Rational> refinement_pair(const std::optional<Rational>& v, int k)
{
    const Rational mid = half(k - 1);
    if (!v || *v >= mid) return {mid, mid};
    return {*v, Rational(k - 1) - *v};
}

UpSlopeAssembly up_assembly(const HeckeContext& ctx, CharpolyProvider& provider)
{
    UpSlopeAssembly a;
    a.ctx = ctx;
    const TpSlopes t = tp_slopes(ctx, provider);
    auto add_pair = [&](const std::optional<Rational>& v) {
        auto [s1, s2] = refinement_pair(v, ctx.k);
        a.combined.add(s1);
        a.combined.add(s2);
        a.old_pairs.push_back({v, std::move(s1), std::move(s2)});
    };
    for (const auto& e : t.slopes.entries())
        for (std::int64_t i = 0; i < e.multiplicity; ++i) add_pair(e.slope);
    for (std::int64_t i = 0; i < t.zero_eigenvalues; ++i) add_pair(std::nullopt);

    a.new_slope = half(ctx.k - 2);
    a.new_multiplicity = ctx.k % 2 ? 0 : trace::dim_p_new(ctx.k, ctx.N, ctx.p);
    if (a.new_multiplicity < 0)
        throw modsym::ConsistencyError("up_assembly: negative p-new dimension at k=" + std::to_string(ctx.k) +
                                       ", N=" + std::to_string(ctx.N) + ", p=" + std::to_string(ctx.p));
    if (a.new_multiplicity > 0) a.combined.add(a.new_slope, a.new_multiplicity);
    return a;
}

SlopeMultiset up_slopes_direct(const HeckeContext& ctx, CharpolyProvider& provider)
{
    if (ctx.k % 2) return {};
    return newton_slopes(provider.charpoly(ctx.k, ctx.N * ctx.p, ctx.p), ctx.p);
}

std::string source_name(WitnessSource s)
{
    return s == WitnessSource::old_refinement ? "old-refinement" : "direct";
}

int default_k_max(std::int64_t p, int j)
{
    return static_cast<int>(std::max<std::int64_t>(50, j + 2 * (p - 1)));
}

std::optional<Witness> find_fractional_witness(std::int64_t p, std::int64_t N, int k_max, CharpolyProvider& provider)
{
    for (int k = 2; k <= k_max; k += 2) {
        const HeckeContext ctx = HeckeContext::make(p, N, k);
        SlopeMultiset slopes;
        WitnessSource source = WitnessSource::direct;
        if (k == 2) {
            slopes = up_assembly(ctx, provider).combined;
            source = WitnessSource::old_refinement;
        } else {
            slopes = tp_slopes(ctx, provider).slopes;
        }
        const SlopeMultiset inside = slopes.open_interval(0, 1);
        if (inside.empty()) continue;
        Witness w{k, inside.entries().front().slope, source};
        if (!classicality_filter(w.slope, k))
            throw std::logic_error("find_fractional_witness: slope " + to_string(w.slope) + " fails classicality");
        return w;
    }
    return std::nullopt;
}

std::string prediction_text(Prediction p)
{
    switch (p) {
    case Prediction::k_equals_j: return "k = j";
    case Prediction::k_equals_j_plus_p_minus_1: return "k = j + (p-1)";
    case Prediction::mismatch: return "mismatch";
    case Prediction::not_found: return "not found";
    }
    return "?";
}

MinimalWitnessReport minimal_witness_report(RegularityVerdict verdict, std::optional<int> k_max,
                                            CharpolyProvider& provider)
{
    if (verdict.regular || !verdict.j)
        throw std::invalid_argument("minimal_witness_report: (" + std::to_string(verdict.p) + ", " +
                                    std::to_string(verdict.N) + ") is regular");
    MinimalWitnessReport r;
    const int j = *verdict.j;
    r.k_max = k_max.value_or(default_k_max(verdict.p, j));
    r.witness = find_fractional_witness(verdict.p, verdict.N, r.k_max, provider);
    if (!r.witness)
        r.prediction = Prediction::not_found;
    else if (r.witness->k == j)
        r.prediction = Prediction::k_equals_j;
    else if (r.witness->k == j + verdict.p - 1)
        r.prediction = Prediction::k_equals_j_plus_p_minus_1;
    else
        r.prediction = Prediction::mismatch;
    r.verdict = std::move(verdict);
    return r;
}

MinimalWitnessReport minimal_witness_report(std::int64_t p, std::int64_t N, std::optional<int> k_max,
                                            CharpolyProvider& provider)
{
    return minimal_witness_report(is_regular(p, N, provider), k_max, provider);
}

Integer weight_sequence(std::int64_t j, std::int64_t p, std::int64_t n)
{
    Integer pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return Integer(2 + j) + Integer(static_cast<long>(p - 1)) * pn;
}

bool classicality_filter(const Rational& h, int k)
{
    return h < k - 1;
}

P2RefinementReport p2_refinement_check(std::int64_t N, CharpolyProvider& provider)
{
    if (N < 1 || N % 2 == 0) throw std::invalid_argument("p2_refinement_check: level must be odd");
    P2RefinementReport r;
    r.N = N;
    r.verdict = is_regular(2, N, provider);
    for (const auto& row : r.verdict.table)
        for (const auto& e : row.slopes.entries())
            if (!is_integral(e.slope) && !r.nonintegral) r.nonintegral = std::make_pair(row.k, e.slope);

    bool all = true;
    for (int k : {2, 4}) {
        const UpSlopeAssembly a = up_assembly(HeckeContext::make(2, N, k), provider);
        for (const auto& pair : a.old_pairs) {
            const bool allowed = pair.source && (*pair.source == 0 || (k == 4 && *pair.source == 1));
            if (allowed) continue;
            RefinementCase c{k, pair.source, {pair.first, pair.second},
                             !is_integral(pair.first) && !is_integral(pair.second)};
            all = all && c.fractional;
            const bool direct = pair.source && !is_integral(*pair.source);
            (direct ? r.nonintegral_sources : r.cases).push_back(std::move(c));
        }
    }
    r.fractional_everywhere = all;
    return r;
}

}  // namespace slopes::theory
