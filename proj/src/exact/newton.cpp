#include "slopes/newton.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace slopes {

void SlopeMultiset::add(const Rational& slope, std::int64_t multiplicity)
{
    if (multiplicity <= 0) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), slope,
                               [](const SlopeEntry& e, const Rational& s) { return e.slope < s; });
    if (it != entries_.end() && it->slope == slope)
        it->multiplicity += multiplicity;
    else
        entries_.insert(it, SlopeEntry{slope, multiplicity});
    total_ += multiplicity;
}

void SlopeMultiset::merge(const SlopeMultiset& other)
{
    for (const auto& e : other.entries_) add(e.slope, e.multiplicity);
}

std::int64_t SlopeMultiset::count_open(const Rational& lo, const Rational& hi) const
{
    std::int64_t n = 0;
    for (const auto& e : entries_)
        if (e.slope > lo && e.slope < hi) n += e.multiplicity;
    return n;
}

SlopeMultiset SlopeMultiset::open_interval(const Rational& lo, const Rational& hi) const
{
    SlopeMultiset out;
    for (const auto& e : entries_)
        if (e.slope > lo && e.slope < hi) out.add(e.slope, e.multiplicity);
    return out;
}

bool SlopeMultiset::all_in(const std::vector<Rational>& allowed) const
{
    return std::all_of(entries_.begin(), entries_.end(), [&](const SlopeEntry& e) {
        return std::find(allowed.begin(), allowed.end(), e.slope) != allowed.end();
    });
}

bool SlopeMultiset::all_integral() const
{
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const SlopeEntry& e) { return e.slope.get_den() == 1; });
}

std::string SlopeMultiset::str() const
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ", ";
        os << to_string(entries_[i].slope) << " x" << entries_[i].multiplicity;
    }
    os << "}";
    return os.str();
}

NewtonPolygon newton_polygon(const IntPolynomial& f, std::int64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("newton_polygon: modulus is not prime");
    std::vector<HullVertex> pts;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        pts.push_back({static_cast<std::int64_t>(i), Rational(valuation_of_nonzero(f[i], p))});
    }

    // Monotone chain; a middle point on or above the chord is dropped.
    std::vector<HullVertex> hull;
    auto slope_between = [](const HullVertex& a, const HullVertex& b) {
        return Rational((b.valuation - a.valuation) / Rational(b.index - a.index));
    };
    for (const auto& pt : pts) {
        while (hull.size() >= 2 &&
               slope_between(hull[hull.size() - 2], hull.back()) >= slope_between(hull.back(), pt))
            hull.pop_back();
        hull.push_back(pt);
    }

    NewtonPolygon poly;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i)
        poly.segments.push_back({slope_between(hull[i], hull[i + 1]), hull[i + 1].index - hull[i].index});
    poly.vertices = std::move(hull);
    return poly;
}

SlopeMultiset newton_slopes(const IntPolynomial& f, std::int64_t p)
{
    if (f.size() == 0 || f[0] != 1)
        throw std::invalid_argument("newton_slopes: constant coefficient must be 1, got " + f.str());
    SlopeMultiset out;
    for (const auto& seg : newton_polygon(f, p).segments) out.add(seg.slope, seg.length);
    return out;
}

}  // namespace slopes
