#pragma once

#include "slopes/cli/cache.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace slopes::cli {

struct CrosscheckGrid {
    std::vector<int> weights;
    std::vector<std::int64_t> levels;
    std::vector<std::int64_t> primes;
};

struct CrosscheckResult {
    std::size_t checked = 0;
    // One line per failure, each enough to rerun that point alone.
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

// For each (k, N, p) with p not dividing N: trace-formula and modular-symbol
// det(1 - T_p X) agree, and the U_p assembly equals the direct U_p slopes at
// level Np. With a cache, every cached record on the grid must also be
// intact and equal to the recomputed polynomial.
CrosscheckResult run_crosscheck(const CrosscheckGrid& grid, const CharpolyCache* cache = nullptr);

}  // namespace slopes::cli
