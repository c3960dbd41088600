#include <doctest.h>

#include "slopes/cli/cache.hpp"
#include "slopes/cli/crosscheck.hpp"
#include "slopes/cli/survey.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace slopes;
using namespace slopes::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() / ("slopes-unit-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

class CountingProvider : public theory::CharpolyProvider {
public:
    std::shared_ptr<theory::CharpolyProvider> inner = theory::make_provider(theory::Engine::modsym);
    std::atomic<int> calls{0};
    IntPolynomial charpoly(int k, std::int64_t level, std::int64_t p) override
    {
        ++calls;
        return inner->charpoly(k, level, p);
    }
};

CacheRecord sample_record()
{
    CacheRecord r;
    r.p = 2;
    r.level = 1;
    r.k = 24;
    r.op = operator_label(1, 2);
    r.coefficients = {Integer(1), Integer(-1080), Integer("-20468736")};
    r.engine = "trace";
    r.seal();
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

}  // namespace

TEST_CASE("operator labels")
{
    CHECK(operator_label(11, 5) == "T5");
    CHECK(operator_label(55, 5) == "U5");
}

TEST_CASE("cache roundtrip is exact")
{
    TempDir dir;
    CharpolyCache cache(dir.path);
    const auto rec = sample_record();
    CHECK(cache_roundtrip(cache, rec) == rec);

    // Coefficients far past 64 bits survive.
    CacheRecord big = rec;
    big.coefficients.push_back(Integer("123456789012345678901234567890123456789"));
    big.coefficients.push_back(Integer("-98765432109876543210987654321"));
    big.seal();
    CHECK(cache_roundtrip(cache, big) == big);
    CHECK(parse_record(big.to_json_line()).record == big);
}

TEST_CASE("cache rejects damaged records")
{
    const auto rec = sample_record();
    const std::string line = rec.to_json_line();
    CHECK(parse_record(line).status == ReadStatus::ok);
    CHECK(parse_record(line.substr(0, line.size() / 2)).status == ReadStatus::corrupt);
    CHECK(parse_record("").status == ReadStatus::corrupt);

    std::string tampered = line;
    const auto pos = tampered.find("-1080");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 5, "-1081");
    CHECK(parse_record(tampered).status == ReadStatus::corrupt);

    CacheRecord old = rec;
    old.schema_version = kCacheSchemaVersion + 1;
    old.seal();
    CHECK(parse_record(old.to_json_line()).status == ReadStatus::version_mismatch);
}

TEST_CASE("cached provider recomputes truncated, tampered and outdated records")
{
    TempDir dir;
    auto cache = std::make_shared<CharpolyCache>(dir.path);
    std::vector<std::string> warnings;
    cache->set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
    auto counting = std::make_shared<CountingProvider>();
    CachedProvider pr(counting, cache, "modsym");

    const IntPolynomial expect({1, 2, 2});
    CHECK(pr.charpoly(2, 22, 2) == expect);
    CHECK(pr.misses() == 1);
    CHECK(pr.charpoly(2, 22, 2) == expect);
    CHECK(pr.hits() == 1);
    CHECK(counting->calls == 1);

    const fs::path file = cache->path_for(2, 22, 2);
    REQUIRE(fs::exists(file));
    const std::string good = slurp(file);

    // Truncated.
    spit(file, good.substr(0, good.size() / 3));
    CHECK(pr.charpoly(2, 22, 2) == expect);
    CHECK(counting->calls == 2);
    CHECK(pr.discarded() == 1);
    CHECK(slurp(file) == good);

    // Wrong coefficient, stale digest.
    std::string bad = good;
    bad.replace(bad.find("\"2\""), 3, "\"3\"");
    spit(file, bad);
    CHECK(pr.charpoly(2, 22, 2) == expect);
    CHECK(counting->calls == 3);
    CHECK(pr.discarded() == 2);
    CHECK(slurp(file) == good);

    // Other schema version.
    auto rec = parse_record(good).record.value();
    rec.schema_version = kCacheSchemaVersion + 7;
    rec.seal();
    spit(file, rec.to_json_line() + "\n");
    CHECK(pr.charpoly(2, 22, 2) == expect);
    CHECK(counting->calls == 4);
    CHECK(pr.discarded() == 3);
    CHECK(warnings.size() == 3);

    // U_p records are labelled with the engine that produced them.
    CHECK(parse_record(slurp(file)).record->op == "U2");
    CHECK(parse_record(slurp(file)).record->engine == "modsym");
}

TEST_CASE("survey example: primes 2 and 3 at level 11")
{
    auto pr = theory::make_provider(theory::Engine::modsym);
    SurveyConfig cfg;
    cfg.primes = {3, 2};
    cfg.levels = {11};
    cfg.k_max = 10;
    const auto res = run_survey(cfg, *pr);
    REQUIRE(res.rows.size() == 2);
    CHECK(res.errors.empty());
    const auto& a = res.rows[0];
    CHECK(a.p == 2);
    CHECK(!a.regular);
    CHECK(a.j == 2);
    CHECK(a.witness_k == 2);
    CHECK(a.witness_slope == Rational(1, 2));
    CHECK(a.prediction_match == "k=j");
    CHECK(a.status == "witness");
    const auto& b = res.rows[1];
    CHECK(b.p == 3);
    CHECK(b.regular);
    CHECK(b.status == "regular");
    CHECK(!b.witness_k);
    CHECK(survey_exit_code(res) == 0);

    std::ostringstream csv;
    write_rows(csv, res.rows, Format::csv);
    CHECK(csv.str() == std::string(kCsvHeader) + "\n2,11,irregular,2,2,1/2,k=j,witness\n3,11,regular,,,,,regular\n");
}

TEST_CASE("survey edge cases")
{
    auto pr = theory::make_provider(theory::Engine::modsym);
    SurveyConfig empty;
    empty.primes = {2, 3};
    const auto r0 = run_survey(empty, *pr);
    CHECK(r0.rows.empty());
    CHECK(survey_exit_code(r0) == 0);
    std::ostringstream csv;
    write_rows(csv, r0.rows, Format::csv);
    CHECK(csv.str() == std::string(kCsvHeader) + "\n");

    SurveyConfig div;
    div.primes = {3};
    div.levels = {6, 9, 11};
    const auto r1 = run_survey(div, *pr);
    CHECK(r1.rows.size() == 1);
    CHECK(r1.skipped.size() == 2);
}

TEST_CASE("survey output does not depend on the worker count")
{
    auto pr = theory::make_provider(theory::Engine::modsym);
    SurveyConfig cfg;
    cfg.primes = {2, 3, 5};
    cfg.levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    cfg.k_max = 12;
    std::string first;
    for (int workers : {1, 3, 8}) {
        cfg.workers = workers;
        std::ostringstream out;
        write_rows(out, run_survey(cfg, *pr).rows, Format::jsonl);
        if (first.empty())
            first = out.str();
        else
            CHECK(out.str() == first);
    }
}

TEST_CASE("format parsing")
{
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("jsonl") == Format::jsonl);
    CHECK(parse_format("text") == Format::text);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("crosscheck passes on a small grid and catches an injected cache fault")
{
    CrosscheckGrid grid{{2, 4, 6}, {1, 5, 7, 11}, {2, 3}};
    CHECK(run_crosscheck(grid).passed());
    CHECK(run_crosscheck(CrosscheckGrid{}).passed());

    TempDir dir;
    auto cache = std::make_shared<CharpolyCache>(dir.path);
    CachedProvider pr(theory::make_provider(theory::Engine::modsym), cache, "modsym");
    pr.charpoly(2, 11, 2);
    CHECK(run_crosscheck(grid, cache.get()).passed());

    // A well-formed record with a wrong polynomial.
    auto rec = parse_record(slurp(cache->path_for(2, 11, 2))).record.value();
    rec.coefficients = {Integer(1), Integer(3), Integer(2)};
    rec.seal();
    cache->write(rec);
    auto res = run_crosscheck(grid, cache.get());
    CHECK(!res.passed());
    REQUIRE(res.failures.size() == 1);
    CHECK(res.failures[0].find("k=2") != std::string::npos);
    CHECK(res.failures[0].find("N=11") != std::string::npos);

    // A damaged file.
    spit(cache->path_for(2, 11, 2), "{\"schema_version\":1,\"p\":");
    res = run_crosscheck(grid, cache.get());
    CHECK(!res.passed());
}
