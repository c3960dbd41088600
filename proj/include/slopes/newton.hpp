#pragma once

#include "slopes/arith.hpp"
#include "slopes/polynomial.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace slopes {

struct SlopeEntry {
    Rational slope;
    std::int64_t multiplicity = 0;

    friend bool operator==(const SlopeEntry&, const SlopeEntry&) = default;
};

// Sorted multiset of rational slopes. Equal slopes are merged.
class SlopeMultiset {
public:
    SlopeMultiset() = default;

    void add(const Rational& slope, std::int64_t multiplicity = 1);
    void merge(const SlopeMultiset& other);

    const std::vector<SlopeEntry>& entries() const { return entries_; }
    std::int64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    // Count of slopes s with lo < s < hi.
    std::int64_t count_open(const Rational& lo, const Rational& hi) const;
    // Sub-multiset of slopes strictly between lo and hi.
    SlopeMultiset open_interval(const Rational& lo, const Rational& hi) const;
    bool all_in(const std::vector<Rational>& allowed) const;
    bool all_integral() const;

    friend bool operator==(const SlopeMultiset&, const SlopeMultiset&) = default;

    // "{1/2 x2, 3 x1}"; "{}" when empty.
    std::string str() const;

private:
    std::vector<SlopeEntry> entries_;
    std::int64_t total_ = 0;
};

struct HullVertex {
    std::int64_t index = 0;
    Rational valuation;
};

struct HullSegment {
    Rational slope;
    std::int64_t length = 0;
};

struct NewtonPolygon {
    std::vector<HullVertex> vertices;
    std::vector<HullSegment> segments;
};

// Lower convex hull of (i, v_p(c_i)) over the non-zero coefficients.
// Collinear points are merged, so segment slopes strictly increase.
NewtonPolygon newton_polygon(const IntPolynomial& f, std::int64_t p);

// Slopes of the Newton polygon of f = det(1 - TX), weighted by horizontal
// length. With f = prod (1 - l_i X) these are exactly v_p(l_i) over the
// non-zero l_i. Requires c_0 = 1; throws std::invalid_argument otherwise.
SlopeMultiset newton_slopes(const IntPolynomial& f, std::int64_t p);

}  // namespace slopes
