#pragma once

#include "slopes/arith.hpp"

#include <cstdint>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace slopes::trace {

// Hurwitz class numbers H(n), memoized.
//
// Values for n > 0 come from enumerating reduced forms [a, b, c] with
// |b| <= a <= c, b >= 0 when |b| = a or a = c, and b^2 - 4ac = -n. Forms
// a(x^2 + y^2) count 1/2 and a(x^2 + xy + y^2) count 1/3. Small n are served
// from a dense table filled in one pass over all forms; larger n are
// enumerated individually.
//
// H(0) is not a form count. It is held as the constant that makes the trace
// formula return tr T_1 = dim S_k; see calibrate_h0().
//
// Thread-safe: concurrent readers share a lock, table growth is exclusive.
class ClassNumberTable {
public:
    static ClassNumberTable& global();

    Rational get(std::int64_t n);
    // Make the dense table cover 0..n.
    void reserve(std::int64_t n);

    static const Rational& h0();

private:
    std::shared_mutex mutex_;
    // Six times H(n), an integer.
    std::vector<std::int64_t> dense_six_;
    std::unordered_map<std::int64_t, std::int64_t> sparse_six_;
};

// 0 when n is 1 or 2 mod 4 (or negative).
Rational hurwitz_class_number(std::int64_t n);

// Weighted count of primitive reduced forms of discriminant d < 0:
// h(d), except 1/2 for d = -4 and 1/3 for d = -3. Zero if d is not a discriminant.
Rational weighted_class_number(std::int64_t d);

// Direct enumeration, no memo. Exposed as an oracle for tests.
Rational hurwitz_by_enumeration(std::int64_t n);

}  // namespace slopes::trace
