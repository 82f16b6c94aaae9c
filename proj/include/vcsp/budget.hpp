#pragma once

#include <cstdint>

namespace vcsp {

/// Caps for the exhaustive procedures.  All of them are checked before or
/// during work; exceeding one raises BudgetExceeded.
struct Budget
{
    /// Assignments enumerated by brute-force solving / expressing.
    std::uint64_t assignments = std::uint64_t{1} << 24;
    /// Table cells n^m of an operation whose polymorphisms are enumerated.
    std::uint64_t table_cells = 27;
    /// Backtracking nodes in any single search.
    std::uint64_t nodes = 10'000'000;
    /// Operations held in any single operation set or closure.
    std::uint64_t operations = 100'000;
    /// Rows of any single linear system.
    std::uint64_t lp_rows = 200'000;
};

} // namespace vcsp
