#pragma once

// Brute-force checks written independently of the library's searches.

#include <vcsp/classifier.hpp>
#include <vcsp/language.hpp>

#include <vector>

namespace oracles {

using namespace vcsp;

/// Tables of <min,min>, <max,max>, <min,max>, <Mj,Mj,Mj>, <Mn,Mn,Mn>, <Mj,Mj,Mn>.
inline auto boolean_multimorphism_tables() -> std::vector<std::vector<std::vector<int>>>
{
    std::vector<int> mn{0, 0, 0, 1}, mx{0, 1, 1, 1}, mj{0, 0, 0, 1, 0, 1, 1, 1}, mi{0, 1, 1, 0, 1, 0, 0, 1};
    return {{mn, mn}, {mx, mx}, {mn, mx}, {mj, mj, mj}, {mi, mi, mi}, {mj, mj, mi}};
}

/// sum_i rho(f_i(columns)) <= sum_i rho(x_i) for every list of feasible rows.
inline auto admits(const Language & l, const std::vector<std::vector<int>> & ops) -> bool
{
    const int k = static_cast<int>(ops.size());
    for (const auto & rho : l.functions) {
        std::vector<Tuple> rows;
        Tuple t(rho.arity, 0);
        do
            if (rho(t).is_finite())
                rows.push_back(t);
        while (next_tuple(t, 2));
        if (rows.empty())
            continue;
        Tuple pick(k, 0);
        do {
            Rational before = 0;
            for (int i = 0; i < k; ++i)
                before += rho(rows[pick[i]]).value();
            ExtendedRational after(0);
            for (const auto & f : ops) {
                Tuple image(rho.arity);
                for (int j = 0; j < rho.arity; ++j) {
                    int index = 0;
                    for (int i = 0; i < k; ++i)
                        index = 2 * index + rows[pick[i]][j];
                    image[j] = f[index];
                }
                after += rho(image);
            }
            if (after > ExtendedRational(before))
                return false;
        } while (next_tuple(pick, static_cast<int>(rows.size())));
    }
    return true;
}

inline auto one_in_three_satisfiable(const Formula & f) -> bool
{
    const auto n = f.variables.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (const auto & c : f.clauses) {
            int ones = 0;
            for (int v : c)
                ones += (mask >> v) & 1u;
            ok = ok && ones == 1;
        }
        if (ok)
            return true;
    }
    return false;
}

} // namespace oracles
