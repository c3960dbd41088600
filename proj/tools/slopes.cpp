// Command-line front end: regularity verdicts, slope tables, witness search,
// surveys and engine cross-checks.

#include "slopes/cli/cache.hpp"
#include "slopes/cli/crosscheck.hpp"
#include "slopes/cli/survey.hpp"
#include "slopes/modsym/manin.hpp"
#include "slopes/theory.hpp"
#include "slopes/trace/dimension.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

using namespace slopes;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitInconclusive = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "2,3,5" or "1-30" or a mix. With primes_only, ranges keep only their
// primes and single items must be prime.
std::vector<std::int64_t> parse_list(const std::string& text, bool primes_only = false)
{
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) {
            try {
                const std::size_t dash = item.find('-', 1);
                if (dash == std::string::npos) {
                    const std::int64_t v = std::stoll(item);
                    if (primes_only && !is_prime(v)) throw UsageError(item + " is not prime");
                    out.push_back(v);
                } else {
                    const std::int64_t lo = std::stoll(item.substr(0, dash)), hi = std::stoll(item.substr(dash + 1));
                    for (std::int64_t v = lo; v <= hi; ++v)
                        if (!primes_only || is_prime(v)) out.push_back(v);
                }
            } catch (const std::logic_error&) {
                throw UsageError("cannot parse list item '" + item + "'");
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Common {
    std::string engine = "modsym";
    std::string cache;
    std::string format;
    int workers = 1;
};

std::shared_ptr<theory::CharpolyProvider> provider_for(const Common& c)
{
    const theory::Engine engine = theory::parse_engine(c.engine);
    auto base = theory::make_provider(engine);
    if (c.cache.empty()) return base;
    return std::make_shared<cli::CachedProvider>(base, std::make_shared<cli::CharpolyCache>(c.cache),
                                                 theory::engine_name(engine));
}

void check_pair(std::int64_t p, std::int64_t n)
{
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    if (n < 1) throw UsageError("level must be positive");
    if (n % p == 0) throw UsageError("p = " + std::to_string(p) + " divides N = " + std::to_string(n));
}

int cmd_regularity(const Common& c, std::int64_t p, std::int64_t n)
{
    check_pair(p, n);
    auto prov = provider_for(c);
    const theory::RegularityVerdict v = theory::is_regular(p, n, *prov);
    const cli::Format f = cli::parse_format(c.format.empty() ? "text" : c.format);
    if (f != cli::Format::text) {
        cli::write_rows(std::cout, {cli::regularity_row(v)}, f);
        return 0;
    }
    std::cout << "p=" << p << " N=" << n << "\n";
    for (const auto& row : v.table) {
        std::cout << "  k=" << row.k << " dim=" << row.dim << " slopes=" << row.slopes.str();
        if (row.zero_eigenvalues) std::cout << " zero-eigenvalues=" << row.zero_eigenvalues;
        if (row.violation) std::cout << "  <- violates";
        std::cout << "\n";
    }
    if (v.regular)
        std::cout << "regular\n";
    else
        std::cout << "irregular, j=" << *v.j << "\n";
    return 0;
}

int cmd_slopes(const Common& c, std::int64_t p, std::int64_t n, int k)
{
    check_pair(p, n);
    if (k < 2) throw UsageError("weight must be at least 2");
    auto prov = provider_for(c);
    const auto ctx = theory::HeckeContext::make(p, n, k);
    const theory::TpSlopes t = theory::tp_slopes(ctx, *prov);
    const theory::UpSlopeAssembly a = theory::up_assembly(ctx, *prov);
    const SlopeMultiset direct = theory::up_slopes_direct(ctx, *prov);
    std::cout << "T_" << p << " on S_" << k << "(Gamma0(" << n << ")), dim " << t.dim << ": " << t.slopes.str();
    if (t.zero_eigenvalues) std::cout << " and " << t.zero_eigenvalues << " zero eigenvalue(s)";
    std::cout << "\n";
    std::cout << "U_" << p << " on S_" << k << "(Gamma0(" << n * p << ")), dim " << trace::dim_cuspforms(k, n * p) << "\n";
    std::cout << "  old pairs:";
    for (const auto& op : a.old_pairs)
        std::cout << " " << (op.source ? to_string(*op.source) : "inf") << "->{" << to_string(op.first) << ","
                  << to_string(op.second) << "}";
    std::cout << "\n  p-new: " << to_string(a.new_slope) << " x" << a.new_multiplicity << "\n";
    std::cout << "  assembled: " << a.combined.str() << "\n  direct:    " << direct.str() << "\n";
    if (!(a.combined == direct)) {
        std::cout << "MISMATCH\n";
        return kExitInconsistent;
    }
    return 0;
}

int cmd_witness(const Common& c, std::int64_t p, std::int64_t n, std::optional<int> k_max)
{
    check_pair(p, n);
    auto prov = provider_for(c);
    const cli::ReportRow row = cli::survey_row(p, n, k_max, *prov);
    cli::write_rows(std::cout, {row}, cli::parse_format(c.format.empty() ? "text" : c.format));
    return row.status == "inconclusive" ? kExitInconclusive : 0;
}

int cmd_survey(const Common& c, const std::string& primes, const std::string& levels, std::optional<int> k_max)
{
    cli::SurveyConfig cfg;
    cfg.primes = parse_list(primes, true);
    cfg.levels = parse_list(levels);
    cfg.k_max = k_max;
    cfg.workers = c.workers;
    for (auto n : cfg.levels)
        if (n < 1) throw UsageError("levels must be positive");
    auto prov = provider_for(c);
    const cli::Format f = cli::parse_format(c.format.empty() ? "csv" : c.format);
    const cli::SurveyResult res = cli::run_survey(cfg, *prov);
    for (const auto& [p, n] : res.skipped) std::cerr << "skipped p=" << p << " N=" << n << " (p divides N)\n";
    cli::write_rows(std::cout, res.rows, f);
    if (f == cli::Format::csv)
        cli::write_errors(std::cerr, res.errors, f);
    else
        cli::write_errors(std::cout, res.errors, f);
    return cli::survey_exit_code(res);
}

int cmd_crosscheck(const Common& c, const std::string& primes, const std::string& levels, int k_max)
{
    cli::CrosscheckGrid grid;
    for (int k = 2; k <= k_max; k += 2) grid.weights.push_back(k);
    grid.levels = parse_list(levels);
    grid.primes = parse_list(primes, true);
    std::unique_ptr<cli::CharpolyCache> cache;
    if (!c.cache.empty()) cache = std::make_unique<cli::CharpolyCache>(c.cache);
    const cli::CrosscheckResult r = cli::run_crosscheck(grid, cache.get());
    if (r.checked == 0) {
        std::cerr << "warning: empty grid, nothing checked\n";
        std::cout << "PASS (0 points)\n";
        return 0;
    }
    for (const auto& f : r.failures) std::cout << "FAIL " << f << "\n";
    std::cout << (r.passed() ? "PASS" : "FAIL") << " (" << r.checked << " points, " << r.failures.size()
              << " failures)\n";
    return r.passed() ? 0 : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"p-adic slopes of Hecke operators and Gamma0(N)-regularity"};
    app.require_subcommand(1);

    Common common;
    if (const char* env = std::getenv("SLOPES_CACHE")) common.cache = env;

    auto add_common = [&](CLI::App* sub, bool engine) {
        if (engine) sub->add_option("--engine", common.engine, "modsym, trace or both")->capture_default_str();
        sub->add_option("--cache", common.cache, "cache directory (default $SLOPES_CACHE)");
        sub->add_option("--format", common.format, "csv, jsonl or text");
    };

    std::int64_t p = 0, n = 0;
    int k = 0;
    std::optional<int> k_max;
    std::string primes, levels;

    auto* reg = app.add_subcommand("regularity", "Low-weight slope table and regularity verdict");
    reg->add_option("--p", p)->required();
    reg->add_option("--N", n)->required();
    add_common(reg, true);

    auto* sl = app.add_subcommand("slopes", "T_p slopes at level N and U_p slopes at level Np");
    sl->add_option("--p", p)->required();
    sl->add_option("--N", n)->required();
    sl->add_option("--k", k, "weight")->required();
    add_common(sl, true);

    auto* wit = app.add_subcommand("witness", "Search for a slope in (0, 1) and compare with j, j + p - 1");
    wit->add_option("--p", p)->required();
    wit->add_option("--N", n)->required();
    wit->add_option("--k-max", k_max, "largest even weight (default max(50, j + 2(p-1)))");
    add_common(wit, true);

    auto* sur = app.add_subcommand("survey", "Verdict and witness search over a grid of (p, N)");
    sur->add_option("--p", primes, "primes, e.g. 2,3,5 or 2-7")->required();
    sur->add_option("--N", levels, "levels, e.g. 11,13 or 1-30")->required();
    sur->add_option("--k-max", k_max);
    sur->add_option("--workers", common.workers)->check(CLI::PositiveNumber);
    add_common(sur, true);

    int cross_k_max = 16;
    std::string cross_primes = "2,3,5,7,11,13", cross_levels = "1-14";
    auto* cc = app.add_subcommand("crosscheck", "Compare the trace-formula and modular-symbol engines");
    cc->add_option("--p", cross_primes)->capture_default_str();
    cc->add_option("--N", cross_levels)->capture_default_str();
    cc->add_option("--k-max", cross_k_max)->capture_default_str();
    add_common(cc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*reg) return cmd_regularity(common, p, n);
        if (*sl) return cmd_slopes(common, p, n, k);
        if (*wit) return cmd_witness(common, p, n, k_max);
        if (*sur) return cmd_survey(common, primes, levels, k_max);
        if (*cc) return cmd_crosscheck(common, cross_primes, cross_levels, cross_k_max);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const modsym::ConsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    }
    return kExitUsage;
}
