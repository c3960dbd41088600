#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace slopes::modsym {

// The projective line P^1(Z/M): pairs (c, d) with gcd(c, d, M) = 1 modulo
// scaling by units. Each class is represented by its lexicographically
// smallest member with 0 <= c, d < M. For M = 1 there is a single point (0, 0).
class P1List {
public:
    explicit P1List(std::int64_t level);

    std::int64_t level() const { return level_; }
    std::size_t size() const { return points_.size(); }
    const std::pair<std::int64_t, std::int64_t>& point(std::size_t i) const { return points_[i]; }

    // Index of the class of (c, d), or -1 when gcd(c, d, M) != 1.
    int index_of(std::int64_t c, std::int64_t d) const
    {
        if (level_ == 1) return 0;
        c %= level_;
        d %= level_;
        if (c < 0) c += level_;
        if (d < 0) d += level_;
        return table_[static_cast<std::size_t>(c * level_ + d)];
    }

private:
    std::int64_t level_;
    std::vector<std::pair<std::int64_t, std::int64_t>> points_;
    std::vector<int> table_;
};

}  // namespace slopes::modsym
