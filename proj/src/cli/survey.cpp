#include "slopes/cli/survey.hpp"

#include "slopes/modsym/manin.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace slopes::cli {

Format parse_format(const std::string& name)
{
    if (name == "csv") return Format::csv;
    if (name == "jsonl") return Format::jsonl;
    if (name == "text") return Format::text;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv, jsonl or text)");
}

std::string prediction_code(theory::Prediction p)
{
    switch (p) {
    case theory::Prediction::k_equals_j: return "k=j";
    case theory::Prediction::k_equals_j_plus_p_minus_1: return "k=j+(p-1)";
    case theory::Prediction::mismatch: return "mismatch";
    case theory::Prediction::not_found: return "";
    }
    return "";
}

ReportRow regularity_row(const theory::RegularityVerdict& v)
{
    ReportRow row;
    row.p = v.p;
    row.N = v.N;
    row.regular = v.regular;
    row.j = v.j;
    row.status = v.regular ? "regular" : "irregular";
    return row;
}

ReportRow survey_row(std::int64_t p, std::int64_t N, std::optional<int> k_max, theory::CharpolyProvider& provider)
{
    theory::RegularityVerdict v = theory::is_regular(p, N, provider);
    ReportRow row = regularity_row(v);
    if (v.regular) return row;
    const theory::MinimalWitnessReport rep = theory::minimal_witness_report(std::move(v), k_max, provider);
    row.k_max = rep.k_max;
    if (rep.witness) {
        row.witness_k = rep.witness->k;
        row.witness_slope = rep.witness->slope;
        row.status = "witness";
    } else {
        row.status = "inconclusive";
    }
    row.prediction_match = prediction_code(rep.prediction);
    return row;
}

SurveyResult run_survey(const SurveyConfig& config, theory::CharpolyProvider& provider)
{
    const std::set<std::int64_t> primes(config.primes.begin(), config.primes.end());
    const std::set<std::int64_t> levels(config.levels.begin(), config.levels.end());
    SurveyResult result;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (auto p : primes)
        for (auto n : levels) {
            if (n % p == 0)
                result.skipped.emplace_back(p, n);
            else
                pairs.emplace_back(p, n);
        }

    struct Slot {
        std::optional<ReportRow> row;
        std::optional<SurveyError> error;
    };
    std::vector<Slot> slots(pairs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < pairs.size(); i = next++) {
            const auto [p, n] = pairs[i];
            try {
                slots[i].row = survey_row(p, n, config.k_max, provider);
            } catch (const modsym::ConsistencyError& e) {
                slots[i].error = SurveyError{p, n, e.what(), true};
            } catch (const std::exception& e) {
                slots[i].error = SurveyError{p, n, e.what(), false};
            }
        }
    };
    const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(pairs.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& s : slots) {
        if (s.row) result.rows.push_back(std::move(*s.row));
        if (s.error) result.errors.push_back(std::move(*s.error));
    }
    return result;
}

namespace {

std::string opt(const std::optional<int>& v)
{
    return v ? std::to_string(*v) : "";
}

}  // namespace

void write_rows(std::ostream& out, const std::vector<ReportRow>& rows, Format format)
{
    switch (format) {
    case Format::csv:
        out << kCsvHeader << "\n";
        for (const auto& r : rows)
            out << r.p << ',' << r.N << ',' << (r.regular ? "regular" : "irregular") << ',' << opt(r.j) << ','
                << opt(r.witness_k) << ',' << (r.witness_slope ? to_string(*r.witness_slope) : "") << ','
                << r.prediction_match << ',' << r.status << "\n";
        break;
    case Format::jsonl:
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["p"] = r.p;
            j["N"] = r.N;
            j["verdict"] = r.regular ? "regular" : "irregular";
            j["j"] = r.j ? nlohmann::ordered_json(*r.j) : nlohmann::ordered_json(nullptr);
            j["witness_k"] = r.witness_k ? nlohmann::ordered_json(*r.witness_k) : nlohmann::ordered_json(nullptr);
            j["witness_slope"] =
                r.witness_slope ? nlohmann::ordered_json(to_string(*r.witness_slope)) : nlohmann::ordered_json(nullptr);
            j["prediction_match"] = r.prediction_match;
            j["status"] = r.status;
            if (r.k_max) j["k_max"] = r.k_max;
            out << j.dump() << "\n";
        }
        break;
    case Format::text:
        for (const auto& r : rows) {
            out << "p=" << r.p << " N=" << r.N << ": ";
            if (r.regular) {
                out << "regular\n";
                continue;
            }
            out << "irregular, j=" << *r.j;
            if (r.witness_k)
                out << "; witness k=" << *r.witness_k << " slope " << to_string(*r.witness_slope) << " ("
                    << r.prediction_match << ")";
            else if (r.status == "inconclusive")
                out << "; no slope in (0,1) for even k <= " << r.k_max << " (inconclusive)";
            out << "\n";
        }
        break;
    }
}

void write_errors(std::ostream& out, const std::vector<SurveyError>& errors, Format format)
{
    if (errors.empty()) return;
    if (format == Format::jsonl) {
        for (const auto& e : errors) {
            nlohmann::ordered_json j;
            j["p"] = e.p;
            j["N"] = e.N;
            j["error"] = e.message;
            out << j.dump() << "\n";
        }
        return;
    }
    out << "errors:\n";
    for (const auto& e : errors) out << "  p=" << e.p << " N=" << e.N << ": " << e.message << "\n";
}

int survey_exit_code(const SurveyResult& result)
{
    if (!result.errors.empty()) return 2;
    for (const auto& r : result.rows)
        if (r.status == "inconclusive") return 3;
    return 0;
}

}  // namespace slopes::cli
