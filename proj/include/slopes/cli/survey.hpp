#pragma once

#include "slopes/theory.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace slopes::cli {

enum class Format { csv, jsonl, text };
Format parse_format(const std::string& name);

struct ReportRow {
    std::int64_t p = 0;
    std::int64_t N = 0;
    bool regular = true;
    std::optional<int> j;
    std::optional<int> witness_k;
    std::optional<Rational> witness_slope;
    std::string prediction_match;  // "k=j", "k=j+(p-1)", "mismatch" or empty
    // "regular", "witness" or "inconclusive"
    std::string status;
    int k_max = 0;
};

// Verdict only (no witness search).
ReportRow regularity_row(const theory::RegularityVerdict& v);
// Verdict plus minimal-witness comparison for irregular pairs.
ReportRow survey_row(std::int64_t p, std::int64_t N, std::optional<int> k_max, theory::CharpolyProvider& provider);

struct SurveyError {
    std::int64_t p = 0;
    std::int64_t N = 0;
    std::string message;
    bool inconsistency = false;
};

struct SurveyConfig {
    std::vector<std::int64_t> primes;
    std::vector<std::int64_t> levels;
    std::optional<int> k_max;
    int workers = 1;
};

struct SurveyResult {
    std::vector<ReportRow> rows;  // ascending (p, N)
    std::vector<std::pair<std::int64_t, std::int64_t>> skipped;  // p | N
    std::vector<SurveyError> errors;
};

// Pairs with p | N are skipped. A failing pair lands in errors and the run
// continues. Rows come out in ascending (p, N) order for any worker count.
SurveyResult run_survey(const SurveyConfig& config, theory::CharpolyProvider& provider);

inline const char* kCsvHeader = "p,N,verdict,j,witness_k,witness_slope,prediction_match,status";

void write_rows(std::ostream& out, const std::vector<ReportRow>& rows, Format format);
void write_errors(std::ostream& out, const std::vector<SurveyError>& errors, Format format);

// 0 ok, 2 any error, 3 some search inconclusive and no errors.
int survey_exit_code(const SurveyResult& result);

std::string prediction_code(theory::Prediction p);

}  // namespace slopes::cli
