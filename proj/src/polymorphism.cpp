#include <vcsp/errors.hpp>
#include <vcsp/polymorphism.hpp>

#include <algorithm>
#include <map>

namespace vcsp {

OperationSet::OperationSet(int domain_size, int arity, std::vector<Operation> ops) :
    domain_size(domain_size), arity(arity)
{
    for (auto & op : ops)
        insert(op);
}

auto OperationSet::insert(const Operation & op) -> bool
{
    if (op.domain_size != domain_size || op.arity != arity)
        throw StructuralError("operation does not match the set's domain or arity");
    auto it = std::lower_bound(operations.begin(), operations.end(), op);
    if (it != operations.end() && *it == op)
        return false;
    operations.insert(it, op);
    return true;
}

auto OperationSet::contains(const Operation & op) const -> bool
{
    return std::binary_search(operations.begin(), operations.end(), op);
}

auto OperationSet::index_of(const Operation & op) const -> std::size_t
{
    auto it = std::lower_bound(operations.begin(), operations.end(), op);
    if (it == operations.end() || ! (*it == op))
        throw StructuralError("operation not in set");
    return static_cast<std::size_t>(it - operations.begin());
}

auto projections(int domain_size, int arity) -> OperationSet
{
    OperationSet set(domain_size, arity);
    for (int i = 0; i < arity; ++i)
        set.insert(Operation::projection(domain_size, arity, i));
    return set;
}

namespace
{
    struct Check
    {
        std::vector<std::size_t> cells;
        const std::vector<bool> * allowed;
    };
}

auto enumerate_polymorphisms(const Language & language, int arity, const Budget & budget, EnumerationFilter filter)
    -> OperationSet
{
    language.validate();
    if (arity < 1)
        throw StructuralError("arity must be positive");
    const int n = language.domain_size;
    std::uint64_t cells_count;
    try {
        cells_count = power(n, arity);
    }
    catch (const StructuralError &) {
        cells_count = ~std::uint64_t{0};
    }
    if (cells_count > budget.table_cells)
        throw BudgetExceeded("operations of arity " + std::to_string(arity) + " have " + std::to_string(cells_count) +
            " table cells, cap is " + std::to_string(budget.table_cells));
    const auto cells = static_cast<std::size_t>(cells_count);

    // Candidate values per cell.
    std::vector<std::vector<int>> candidates(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        auto t = lex_tuple(c, n, arity);
        for (int v = 0; v < n; ++v) {
            bool ok = true;
            if (filter.idempotent && std::all_of(t.begin(), t.end(), [&](int x) { return x == t[0]; }))
                ok = v == t[0];
            if (filter.conservative)
                ok = ok && std::find(t.begin(), t.end(), v) != t.end();
            if (ok)
                candidates[c].push_back(v);
        }
    }

    // One check per function and per list of `arity` feasible tuples, keyed
    // by the largest cell it reads.
    std::vector<std::vector<bool>> allowed;
    allowed.reserve(language.functions.size());
    std::vector<std::vector<Check>> due(cells);
    std::uint64_t check_count = 0;
    for (const auto & rho : language.functions) {
        std::vector<bool> ok(rho.table.size());
        for (std::size_t i = 0; i < ok.size(); ++i)
            ok[i] = rho.table[i].is_finite();
        allowed.push_back(std::move(ok));
        auto relation = feas(rho);
        if (relation.empty())
            continue;
        std::map<std::vector<std::size_t>, bool> seen;
        std::vector<std::size_t> choice(arity, 0);
        while (true) {
            std::vector<std::size_t> read(rho.arity);
            for (int j = 0; j < rho.arity; ++j) {
                std::size_t index = 0;
                for (int i = 0; i < arity; ++i)
                    index = index * n + relation[choice[i]][j];
                read[j] = index;
            }
            if (seen.emplace(read, true).second) {
                if (++check_count > budget.lp_rows * 10)
                    throw BudgetExceeded("too many compatibility checks");
                auto last = *std::max_element(read.begin(), read.end());
                due[last].push_back({std::move(read), &allowed.back()});
            }
            int i = arity;
            while (i > 0 && ++choice[i - 1] == relation.size())
                choice[--i] = 0;
            if (i == 0)
                break;
        }
    }

    OperationSet result(n, arity);
    std::vector<int> table(cells, 0);
    std::vector<std::size_t> pick(cells, 0);
    std::uint64_t nodes = 0;

    auto consistent = [&](std::size_t cell) {
        for (const auto & check : due[cell]) {
            std::size_t index = 0;
            for (auto c : check.cells)
                index = index * n + table[c];
            if (! (*check.allowed)[index])
                return false;
        }
        return true;
    };

    if (cells == 0)
        return result;
    std::size_t depth = 0;
    pick[0] = 0;
    bool fresh = true;
    while (true) {
        if (! fresh)
            ++pick[depth];
        fresh = false;
        if (pick[depth] >= candidates[depth].size()) {
            if (depth == 0)
                break;
            --depth;
            continue;
        }
        if (++nodes > budget.nodes)
            throw BudgetExceeded("polymorphism search exceeded " + std::to_string(budget.nodes) + " nodes");
        table[depth] = candidates[depth][pick[depth]];
        if (! consistent(depth))
            continue;
        if (depth + 1 == cells) {
            result.operations.emplace_back(n, arity, table);
            if (result.operations.size() > budget.operations)
                throw BudgetExceeded("more than " + std::to_string(budget.operations) + " polymorphisms of arity " +
                    std::to_string(arity));
            continue;
        }
        ++depth;
        pick[depth] = 0;
        fresh = true;
    }
    return result;
}

auto projection_coordinate(const Operation & f) -> int
{
    for (int i = 0; i < f.arity; ++i) {
        bool match = true;
        for (std::size_t c = 0; c < f.table.size() && match; ++c)
            match = f.table[c] == lex_tuple(c, f.domain_size, f.arity)[i];
        if (match)
            return i;
    }
    return -1;
}

auto is_projection(const Operation & f) -> bool
{
    return projection_coordinate(f) >= 0;
}

auto is_idempotent(const Operation & f) -> bool
{
    for (int d = 0; d < f.domain_size; ++d)
        if (f(Tuple(f.arity, d)) != d)
            return false;
    return true;
}

auto is_cyclic(const Operation & f) -> bool
{
    Tuple t(f.arity, 0), rotated(f.arity);
    do {
        std::rotate_copy(t.begin(), t.begin() + 1, t.end(), rotated.begin());
        if (f(t) != f(rotated))
            return false;
    } while (next_tuple(t, f.domain_size));
    return true;
}

namespace
{
    // f(x,x,y), f(x,y,x), f(y,x,x) all equal to pick(x, y).
    template <typename Pick>
    auto ternary_identity(const Operation & f, Pick pick) -> bool
    {
        if (f.arity != 3)
            return false;
        for (int x = 0; x < f.domain_size; ++x)
            for (int y = 0; y < f.domain_size; ++y) {
                int want = pick(x, y);
                if (f({x, x, y}) != want || f({x, y, x}) != want || f({y, x, x}) != want)
                    return false;
            }
        return true;
    }
}

auto is_majority(const Operation & f) -> bool
{
    return ternary_identity(f, [](int x, int) { return x; });
}

auto is_minority(const Operation & f) -> bool
{
    return ternary_identity(f, [](int, int y) { return y; });
}

auto is_conservative(const Operation & f) -> bool
{
    for (std::size_t c = 0; c < f.table.size(); ++c) {
        auto t = lex_tuple(c, f.domain_size, f.arity);
        if (std::find(t.begin(), t.end(), f.table[c]) == t.end())
            return false;
    }
    return true;
}

auto is_bijective(const Operation & f) -> bool
{
    if (f.arity != 1)
        return false;
    std::vector<bool> hit(f.domain_size, false);
    for (int v : f.table)
        hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

auto close_under_superposition(const std::vector<Operation> & generators, int domain_size, int max_arity,
    const Budget & budget) -> std::vector<OperationSet>
{
    if (max_arity < 1)
        throw StructuralError("max arity must be positive");
    std::vector<OperationSet> sets;
    for (int l = 1; l <= max_arity; ++l)
        sets.push_back(projections(domain_size, l));
    std::vector<Operation> wide;
    for (const auto & g : generators) {
        if (g.domain_size != domain_size)
            throw StructuralError("generator over a different domain");
        if (g.arity <= max_arity)
            sets[g.arity - 1].insert(g);
        else if (std::find(wide.begin(), wide.end(), g) == wide.end())
            wide.push_back(g);
    }

    // Semi-naive rounds: a composition is only formed when at least one
    // participant was added in the previous round.
    std::vector<std::vector<Operation>> old_members(max_arity), members(max_arity);
    for (int l = 0; l < max_arity; ++l)
        members[l] = sets[l].operations;
    bool first = true;
    std::uint64_t nodes = 0;
    while (true) {
        std::vector<std::vector<Operation>> found(max_arity);
        auto is_old = [&](int arity, const Operation & op) {
            return ! first && arity <= max_arity &&
                std::binary_search(old_members[arity - 1].begin(), old_members[arity - 1].end(), op);
        };

        std::vector<const Operation *> outer;
        for (const auto & s : members)
            for (const auto & op : s)
                outer.push_back(&op);
        for (const auto & op : wide)
            outer.push_back(&op);

        for (const auto * f : outer) {
            const bool f_old = is_old(f->arity, *f) || (! first && f->arity > max_arity);
            for (int l = 1; l <= max_arity; ++l) {
                const auto & inner = members[l - 1];
                const auto k = static_cast<std::size_t>(f->arity);
                std::vector<std::size_t> pick(k, 0);
                std::vector<Operation> g(k);
                while (true) {
                    if (++nodes > budget.nodes)
                        throw BudgetExceeded("superposition closure exceeded " + std::to_string(budget.nodes) + " nodes");
                    bool all_old = f_old;
                    for (std::size_t i = 0; i < k && all_old; ++i)
                        all_old = is_old(l, inner[pick[i]]);
                    if (! all_old) {
                        for (std::size_t i = 0; i < k; ++i)
                            g[i] = inner[pick[i]];
                        auto h = superposition(*f, g);
                        if (! sets[l - 1].contains(h))
                            found[l - 1].push_back(std::move(h));
                    }
                    std::size_t i = k;
                    while (i > 0 && ++pick[i - 1] == inner.size())
                        pick[--i] = 0;
                    if (i == 0)
                        break;
                }
            }
        }
        bool grew = false;
        for (int l = 0; l < max_arity; ++l) {
            old_members[l] = sets[l].operations;
            for (const auto & h : found[l])
                grew = sets[l].insert(h) || grew;
            if (sets[l].size() > budget.operations)
                throw BudgetExceeded("clone part of arity " + std::to_string(l + 1) + " exceeds " +
                    std::to_string(budget.operations) + " operations");
            members[l] = sets[l].operations;
        }
        first = false;
        if (! grew)
            break;
    }
    return sets;
}

auto operation_set_to_json(const OperationSet & set) -> Json
{
    Json ops = Json::array();
    for (const auto & op : set.operations)
        ops.push_back(op.table);
    return Json{{"domain_size", set.domain_size}, {"arity", set.arity}, {"operations", ops}};
}

using namespace json_fields;

auto operation_set_from_json(const Json & value, const std::string & where) -> OperationSet
{
    check_keys(value, {"domain_size", "arity", "operations"}, where);
    auto n = as_int(require(value, "domain_size", where), child(where, "domain_size"));
    auto arity = as_int(require(value, "arity", where), child(where, "arity"));
    if (n < 1 || n > 64 || arity < 1 || arity > 16)
        throw ParseError(where, "domain size or arity out of range");
    OperationSet set(static_cast<int>(n), static_cast<int>(arity));
    auto ow = child(where, "operations");
    const auto & ops = as_array(require(value, "operations", where), ow);
    for (std::size_t i = 0; i < ops.size(); ++i)
        set.insert(operation_from_json(Json{{"arity", arity}, {"table", ops[i]}}, set.domain_size, child(ow, i)));
    return set;
}

} // namespace vcsp
