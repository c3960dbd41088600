#include "slopes/trace/classnumber.hpp"

#include "slopes/trace/dimension.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace slopes::trace {

namespace {

Rational sixths(std::int64_t six)
{
    Rational r(six, 6);
    r.canonicalize();
    return r;
}

constexpr std::int64_t kDenseLimit = std::int64_t{1} << 21;

std::int64_t six_h_direct(std::int64_t n)
{
    if (n <= 0 || n % 4 == 1 || n % 4 == 2) return 0;
    std::int64_t total = 0;
    // b has the parity of n; 4ac = b^2 + n.
    for (std::int64_t b = n % 2; 3 * b * b <= n; b += 2) {
        const std::int64_t ac = (b * b + n) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= ac; ++a) {
            if (ac % a != 0) continue;
            const std::int64_t c = ac / a;
            if (b == 0) {
                total += a == c ? 3 : 6;
            } else if (a == b || a == c) {
                // Only +b is reduced; a = b = c is the hexagonal form.
                total += (a == b && a == c) ? 2 : 6;
            } else {
                total += 12;  // +b and -b
            }
        }
    }
    return total;
}

std::vector<std::int64_t> six_h_table(std::int64_t limit)
{
    std::vector<std::int64_t> t(static_cast<std::size_t>(limit + 1), 0);
    for (std::int64_t a = 1; 3 * a * a <= limit; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            for (std::int64_t c = a;; ++c) {
                const std::int64_t d = 4 * a * c - b * b;
                if (d > limit) break;
                if (c == a && b < 0) continue;
                std::int64_t w = 6;
                if (a == c && b == 0) w = 3;
                if (a == b && b == c) w = 2;
                t[static_cast<std::size_t>(d)] += w;
            }
        }
    }
    return t;
}

}  // namespace

ClassNumberTable& ClassNumberTable::global()
{
    static ClassNumberTable table;
    return table;
}

const Rational& ClassNumberTable::h0()
{
    static const Rational value(-1, 12);
    return value;
}

void ClassNumberTable::reserve(std::int64_t n)
{
    n = std::min(n, kDenseLimit);
    {
        std::shared_lock lock(mutex_);
        if (static_cast<std::int64_t>(dense_six_.size()) > n) return;
    }
    std::unique_lock lock(mutex_);
    if (static_cast<std::int64_t>(dense_six_.size()) > n) return;
    std::int64_t limit = std::max<std::int64_t>(1024, static_cast<std::int64_t>(dense_six_.size()) * 2);
    while (limit < n) limit *= 2;
    dense_six_ = six_h_table(std::min(limit, kDenseLimit));
}

Rational ClassNumberTable::get(std::int64_t n)
{
    if (n < 0 || n % 4 == 1 || n % 4 == 2) return 0;
    if (n == 0) return h0();
    if (n <= kDenseLimit) {
        reserve(n);
        std::shared_lock lock(mutex_);
        return sixths(dense_six_[static_cast<std::size_t>(n)]);
    }
    {
        std::shared_lock lock(mutex_);
        if (auto it = sparse_six_.find(n); it != sparse_six_.end()) return sixths(it->second);
    }
    const std::int64_t v = six_h_direct(n);
    std::unique_lock lock(mutex_);
    sparse_six_.emplace(n, v);
    return sixths(v);
}

Rational hurwitz_class_number(std::int64_t n)
{
    return ClassNumberTable::global().get(n);
}

Rational hurwitz_by_enumeration(std::int64_t n)
{
    return sixths(six_h_direct(n));
}

Rational weighted_class_number(std::int64_t d)
{
    if (d >= 0) throw std::invalid_argument("weighted_class_number: discriminant must be negative");
    const std::int64_t n = -d;
    if (n % 4 == 1 || n % 4 == 2) return 0;
    // Moebius inversion of H(n) = sum_{f^2 | n} h_w(-n / f^2).
    Rational total = 0;
    for (std::int64_t f = 1; f * f <= n; ++f) {
        if (n % (f * f) != 0) continue;
        const std::int64_t m = n / (f * f);
        if (m % 4 == 1 || m % 4 == 2) continue;
        int mu = 1;
        bool squarefree = true;
        for (const auto& [q, e] : factor(f)) {
            if (e > 1) squarefree = false;
            mu = -mu;
        }
        if (!squarefree) continue;
        if (mu > 0)
            total += hurwitz_class_number(m);
        else
            total -= hurwitz_class_number(m);
    }
    return total;
}

}  // namespace slopes::trace
