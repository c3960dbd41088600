#include "slopes/modsym/p1list.hpp"

#include "slopes/trace/dimension.hpp"

#include <stdexcept>

namespace slopes::modsym {

P1List::P1List(std::int64_t level) : level_(level)
{
    if (level < 1) throw std::invalid_argument("P1List: level must be positive");
    if (level == 1) {
        points_.emplace_back(0, 0);
        return;
    }
    if (level > 46340) throw std::invalid_argument("P1List: level too large for the lookup table");
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u < level; ++u)
        if (trace::gcd(u, level) == 1) units.push_back(u);

    table_.assign(static_cast<std::size_t>(level * level), -1);
    for (std::int64_t c = 0; c < level; ++c)
        for (std::int64_t d = 0; d < level; ++d) {
            if (table_[static_cast<std::size_t>(c * level + d)] >= 0) continue;
            if (trace::gcd(trace::gcd(c, d), level) != 1) continue;
            const int idx = static_cast<int>(points_.size());
            points_.emplace_back(c, d);
            for (std::int64_t u : units)
                table_[static_cast<std::size_t>((u * c % level) * level + u * d % level)] = idx;
        }
}

}  // namespace slopes::modsym
