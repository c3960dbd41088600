#pragma once

#include "slopes/arith.hpp"
#include "slopes/polynomial.hpp"
#include "slopes/theory.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace slopes::cli {

inline constexpr int kCacheSchemaVersion = 1;

struct CacheRecord {
    int schema_version = kCacheSchemaVersion;
    std::int64_t p = 0;
    std::int64_t level = 0;
    int k = 0;
    std::string op;  // "T5", "U5"
    std::vector<Integer> coefficients;
    std::string engine;
    std::string digest;  // hex SHA-256 of payload()

    // Canonical text the digest is taken over.
    std::string payload() const;
    std::string compute_digest() const;
    void seal() { digest = compute_digest(); }

    std::string to_json_line() const;
    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

std::string operator_label(std::int64_t level, std::int64_t p);

enum class ReadStatus { ok, missing, corrupt, version_mismatch };

struct ReadResult {
    ReadStatus status = ReadStatus::missing;
    std::optional<CacheRecord> record;
    std::string detail;
};

// Parses one line; status corrupt covers bad JSON, missing or mistyped
// fields, non-integer coefficients and digest mismatch.
ReadResult parse_record(const std::string& line);

// Directory of characteristic polynomials, one single-line jsonl file per
// (k, level, operator). Files are replaced by write-to-temp then rename, so a
// reader sees either the old or the new complete record.
class CharpolyCache {
public:
    explicit CharpolyCache(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path path_for(int k, std::int64_t level, std::int64_t p) const;

    ReadResult read(int k, std::int64_t level, std::int64_t p) const;
    void write(const CacheRecord& record) const;

    // Called for discarded or ignored records.
    void set_warning_sink(std::function<void(const std::string&)> sink) { warn_ = std::move(sink); }
    void warn(const std::string& message) const;

private:
    std::filesystem::path dir_;
    std::function<void(const std::string&)> warn_;
};

// write followed by read of the same key.
CacheRecord cache_roundtrip(const CharpolyCache& cache, const CacheRecord& record);

// Serves polynomials from the cache, computing and storing missing,
// corrupt or outdated records with the wrapped provider.
class CachedProvider : public theory::CharpolyProvider {
public:
    CachedProvider(std::shared_ptr<theory::CharpolyProvider> inner, std::shared_ptr<CharpolyCache> cache,
                   std::string engine);

    IntPolynomial charpoly(int k, std::int64_t level, std::int64_t p) override;

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    std::size_t discarded() const { return discarded_; }

private:
    std::shared_ptr<theory::CharpolyProvider> inner_;
    std::shared_ptr<CharpolyCache> cache_;
    std::string engine_;
    std::atomic<std::size_t> hits_{0}, misses_{0}, discarded_{0};
};

}  // namespace slopes::cli
