#include "slopes/cli/cache.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace slopes::cli {

namespace {

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

bool parse_integer(const std::string& s, Integer& out)
{
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return out.set_str(s, 10) == 0;
}

}  // namespace

std::string operator_label(std::int64_t level, std::int64_t p)
{
    return (level % p == 0 ? "U" : "T") + std::to_string(p);
}

std::string CacheRecord::payload() const
{
    std::ostringstream os;
    os << schema_version << '|' << p << '|' << level << '|' << k << '|' << op << '|' << engine << '|';
    for (std::size_t i = 0; i < coefficients.size(); ++i) os << (i ? "," : "") << coefficients[i].get_str();
    return os.str();
}

std::string CacheRecord::compute_digest() const
{
    return sha256_hex(payload());
}

std::string CacheRecord::to_json_line() const
{
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["p"] = p;
    j["level"] = level;
    j["weight"] = k;
    j["operator"] = op;
    std::vector<std::string> cs;
    cs.reserve(coefficients.size());
    for (const auto& c : coefficients) cs.push_back(c.get_str());
    j["coefficients"] = cs;
    j["engine"] = engine;
    j["digest"] = digest;
    return j.dump();
}

ReadResult parse_record(const std::string& line)
{
    ReadResult r;
    r.status = ReadStatus::corrupt;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        r.detail = "not a JSON object";
        return r;
    }
    try {
        CacheRecord rec;
        rec.schema_version = j.at("schema_version").get<int>();
        if (rec.schema_version != kCacheSchemaVersion) {
            r.status = ReadStatus::version_mismatch;
            r.detail = "schema version " + std::to_string(rec.schema_version);
            return r;
        }
        rec.p = j.at("p").get<std::int64_t>();
        rec.level = j.at("level").get<std::int64_t>();
        rec.k = j.at("weight").get<int>();
        rec.op = j.at("operator").get<std::string>();
        rec.engine = j.at("engine").get<std::string>();
        rec.digest = j.at("digest").get<std::string>();
        for (const auto& c : j.at("coefficients")) {
            Integer z;
            if (!c.is_string() || !parse_integer(c.get<std::string>(), z)) {
                r.detail = "coefficient is not a decimal integer";
                return r;
            }
            rec.coefficients.push_back(std::move(z));
        }
        if (rec.compute_digest() != rec.digest) {
            r.detail = "digest mismatch";
            return r;
        }
        r.status = ReadStatus::ok;
        r.record = std::move(rec);
    } catch (const nlohmann::json::exception& e) {
        r.detail = std::string("bad field: ") + e.what();
    }
    return r;
}

CharpolyCache::CharpolyCache(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

std::filesystem::path CharpolyCache::path_for(int k, std::int64_t level, std::int64_t p) const
{
    return dir_ / ("k" + std::to_string(k) + "-M" + std::to_string(level) + "-" + operator_label(level, p) + ".jsonl");
}

void CharpolyCache::warn(const std::string& message) const
{
    if (warn_)
        warn_(message);
    else
        std::cerr << "warning: " << message << "\n";
}

ReadResult CharpolyCache::read(int k, std::int64_t level, std::int64_t p) const
{
    const auto path = path_for(k, level, p);
    std::ifstream in(path);
    if (!in) return {};
    std::string line;
    if (!std::getline(in, line) || in.peek() != std::ifstream::traits_type::eof()) {
        ReadResult r;
        r.status = ReadStatus::corrupt;
        r.detail = "expected exactly one record line";
        return r;
    }
    ReadResult r = parse_record(line);
    if (r.status == ReadStatus::ok &&
        (r.record->k != k || r.record->level != level || r.record->p != p || r.record->op != operator_label(level, p))) {
        r.status = ReadStatus::corrupt;
        r.detail = "record key does not match its file";
        r.record.reset();
    }
    return r;
}

void CharpolyCache::write(const CacheRecord& record) const
{
    static std::atomic<unsigned long> counter{0};
    const auto target = path_for(record.k, record.level, record.p);
    std::ostringstream tmpname;
    tmpname << target.filename().string() << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id())
            << "." << counter++;
    const auto tmp = dir_ / tmpname.str();
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << record.to_json_line() << "\n";
        out.flush();
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

CacheRecord cache_roundtrip(const CharpolyCache& cache, const CacheRecord& record)
{
    cache.write(record);
    ReadResult r = cache.read(record.k, record.level, record.p);
    if (r.status != ReadStatus::ok) throw std::runtime_error("cache_roundtrip: " + r.detail);
    return *r.record;
}

CachedProvider::CachedProvider(std::shared_ptr<theory::CharpolyProvider> inner, std::shared_ptr<CharpolyCache> cache,
                               std::string engine)
    : inner_(std::move(inner)), cache_(std::move(cache)), engine_(std::move(engine))
{
}

IntPolynomial CachedProvider::charpoly(int k, std::int64_t level, std::int64_t p)
{
    ReadResult r = cache_->read(k, level, p);
    if (r.status == ReadStatus::ok) {
        ++hits_;
        return IntPolynomial(r.record->coefficients);
    }
    const std::string where = cache_->path_for(k, level, p).filename().string();
    if (r.status == ReadStatus::corrupt) {
        ++discarded_;
        cache_->warn("discarding corrupt cache record " + where + " (" + r.detail + "); recomputing");
    } else if (r.status == ReadStatus::version_mismatch) {
        ++discarded_;
        cache_->warn("ignoring cache record " + where + " with " + r.detail + "; recomputing");
    }
    ++misses_;
    IntPolynomial f = inner_->charpoly(k, level, p);
    CacheRecord rec;
    rec.p = p;
    rec.level = level;
    rec.k = k;
    rec.op = operator_label(level, p);
    rec.coefficients = f.coefficients();
    // U_p always comes from modular symbols.
    rec.engine = level % p == 0 ? "modsym" : engine_;
    rec.seal();
    cache_->write(rec);
    return f;
}

}  // namespace slopes::cli
