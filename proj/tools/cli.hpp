#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vcsp::cli {

/// Exit codes.
inline constexpr int ok = 0;
inline constexpr int internal_failure = 1;
inline constexpr int unknown_or_budget = 2;
inline constexpr int input_error = 3;

/// Runs one command line (without the program name).  The result document
/// goes to --out when given and to `out` otherwise; the one-line summary goes
/// to `out` when --out is given and to `err` otherwise.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

} // namespace vcsp::cli
