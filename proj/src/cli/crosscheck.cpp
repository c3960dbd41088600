#include "slopes/cli/crosscheck.hpp"

#include "slopes/modsym/hecke.hpp"
#include "slopes/trace/trace_formula.hpp"

namespace slopes::cli {

namespace {

std::string point(int k, std::int64_t level, std::int64_t p)
{
    return "k=" + std::to_string(k) + " N=" + std::to_string(level) + " p=" + std::to_string(p);
}

void check_cached(const CharpolyCache& cache, int k, std::int64_t level, std::int64_t p, const IntPolynomial& expected,
                  CrosscheckResult& out)
{
    const ReadResult r = cache.read(k, level, p);
    const std::string where = cache.path_for(k, level, p).string();
    if (r.status == ReadStatus::corrupt) {
        out.failures.push_back(point(k, level, p) + ": corrupt cache record " + where + " (" + r.detail + ")");
    } else if (r.status == ReadStatus::ok && !(IntPolynomial(r.record->coefficients) == expected)) {
        out.failures.push_back(point(k, level, p) + ": cache record " + where + " holds " +
                               IntPolynomial(r.record->coefficients).str() + ", recomputed " + expected.str());
    }
}

}  // namespace

CrosscheckResult run_crosscheck(const CrosscheckGrid& grid, const CharpolyCache* cache)
{
    CrosscheckResult out;
    auto modsym = theory::make_provider(theory::Engine::modsym);
    for (int k : grid.weights) {
        if (k < 2 || k % 2) continue;
        for (auto level : grid.levels)
            for (auto p : grid.primes) {
                if (level % p == 0) continue;
                ++out.checked;
                const std::string where = point(k, level, p);
                try {
                    const IntPolynomial a = trace::charpoly_from_traces(k, level, p);
                    const IntPolynomial b = modsym::charpoly_cuspidal(k, level, p);
                    if (!(a == b))
                        out.failures.push_back(where + ": trace formula " + a.str() + " vs modular symbols " + b.str());
                    const auto ctx = theory::HeckeContext::make(p, level, k);
                    const SlopeMultiset assembled = theory::up_assembly(ctx, *modsym).combined;
                    const IntPolynomial up = modsym::charpoly_cuspidal(k, level * p, p);
                    const SlopeMultiset direct = newton_slopes(up, p);
                    if (!(assembled == direct))
                        out.failures.push_back(where + ": U_p assembly " + assembled.str() + " vs direct " + direct.str());
                    if (cache) {
                        check_cached(*cache, k, level, p, b, out);
                        check_cached(*cache, k, level * p, p, up, out);
                    }
                } catch (const std::exception& e) {
                    out.failures.push_back(where + ": " + e.what());
                }
            }
    }
    return out;
}

}  // namespace slopes::cli
