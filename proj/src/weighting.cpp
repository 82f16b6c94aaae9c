#include <vcsp/errors.hpp>
#include <vcsp/linear_system.hpp>
#include <vcsp/weighting.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <variant>

namespace vcsp {

auto Weighting::make(int domain_size, int arity, std::vector<std::pair<Operation, Rational>> raw) -> Weighting
{
    std::map<Operation, Rational> merged;
    for (auto & [op, w] : raw) {
        if (op.domain_size != domain_size || op.arity != arity)
            throw InvalidWeighting("weighted operation does not match the weighting's domain or arity");
        merged[op] += w;
    }
    Weighting result;
    result.domain_size = domain_size;
    result.arity = arity;
    Rational total = 0;
    for (auto & [op, w] : merged) {
        if (sgn(w) == 0)
            continue;
        if (sgn(w) < 0 && ! is_projection(op))
            throw InvalidWeighting("negative weight on a non-projection");
        total += w;
        result.entries.emplace_back(op, w);
    }
    if (sgn(total) != 0)
        throw InvalidWeighting("weights sum to " + format_rational(total) + ", not 0");
    return result;
}

auto Weighting::zero(int domain_size, int arity) -> Weighting
{
    return make(domain_size, arity, {});
}

auto Weighting::weight(const Operation & op) const -> Rational
{
    auto it = std::lower_bound(entries.begin(), entries.end(), op, [](const auto & e, const Operation & o) { return e.first < o; });
    if (it != entries.end() && it->first == op)
        return it->second;
    return 0;
}

auto Weighting::support() const -> std::vector<Operation>
{
    std::vector<Operation> result;
    for (const auto & [op, w] : entries)
        if (sgn(w) > 0)
            result.push_back(op);
    return result;
}

auto multimorphism_weighting(const std::vector<Operation> & ops) -> Weighting
{
    if (ops.empty())
        throw InvalidWeighting("empty multimorphism");
    const int n = ops.front().domain_size, k = ops.front().arity;
    if (static_cast<int>(ops.size()) != k)
        throw InvalidWeighting("a multimorphism of arity k lists exactly k operations");
    Rational share(1, k);
    std::vector<std::pair<Operation, Rational>> raw;
    for (const auto & f : ops)
        raw.emplace_back(f, share);
    for (int i = 0; i < k; ++i)
        raw.emplace_back(Operation::projection(n, k, i), -share);
    return Weighting::make(n, k, std::move(raw));
}

auto normalized(const Weighting & w) -> Weighting
{
    Rational most_negative = 0;
    for (const auto & [op, v] : w.entries)
        most_negative = std::min(most_negative, v);
    if (sgn(most_negative) == 0)
        return w;
    auto result = w;
    for (auto & [op, v] : result.entries)
        v /= -most_negative;
    return result;
}

namespace
{
    // Calls visit(choice) for every list of `k` indices into a relation of
    // the given size, in lexicographic order.
    template <typename Visit>
    auto for_each_list(std::size_t size, int k, Visit visit) -> void
    {
        if (size == 0)
            return;
        std::vector<std::size_t> choice(k, 0);
        while (true) {
            visit(choice);
            int i = k;
            while (i > 0 && ++choice[i - 1] == size)
                choice[--i] = 0;
            if (i == 0)
                return;
        }
    }

    // Column cells of a tuple list: cell j is the lex index of
    // (x_1[j], ..., x_k[j]).
    auto column_cells(const Relation & relation, const std::vector<std::size_t> & choice, int arity, int n)
        -> std::vector<std::size_t>
    {
        std::vector<std::size_t> cells(arity);
        for (int j = 0; j < arity; ++j) {
            std::size_t index = 0;
            for (auto c : choice)
                index = index * n + relation[c][j];
            cells[j] = index;
        }
        return cells;
    }

    auto image_index(const Operation & g, const std::vector<std::size_t> & cells, int n) -> std::size_t
    {
        std::size_t index = 0;
        for (auto c : cells)
            index = index * n + g.table[c];
        return index;
    }

    auto check_rows(std::uint64_t count, const Budget & budget) -> void
    {
        if (count > budget.lp_rows)
            throw BudgetExceeded("linear system would need more than " + std::to_string(budget.lp_rows) + " rows");
    }

    // Distinct non-zero improvement rows (rho(g(x_1..x_m)))_g over `ops`, all
    // of which must be polymorphisms.
    auto improvement_rows(const Language & language, const std::vector<Operation> & ops, int m, const Budget & budget)
        -> std::vector<std::vector<Rational>>
    {
        const int n = language.domain_size;
        std::vector<std::vector<Rational>> rows;
        std::set<std::vector<Rational>> seen;
        std::uint64_t visited = 0;
        for (const auto & rho : language.functions) {
            auto relation = feas(rho);
            for_each_list(relation.size(), m, [&](const std::vector<std::size_t> & choice) {
                check_rows(++visited, budget);
                auto cells = column_cells(relation, choice, rho.arity, n);
                std::vector<Rational> row(ops.size());
                bool nonzero = false;
                for (std::size_t g = 0; g < ops.size(); ++g) {
                    const auto & v = rho.table[image_index(ops[g], cells, n)];
                    if (v.is_infinite())
                        throw InternalError("polymorphism maps a feasible list to an infinite cost");
                    row[g] = v.value();
                    nonzero = nonzero || sgn(row[g]) != 0;
                }
                if (nonzero && seen.insert(row).second)
                    rows.push_back(std::move(row));
            });
        }
        return rows;
    }

    auto require_pol(const Language & language, const Operation & f) -> void
    {
        if (! is_polymorphism(f, language))
            throw NotAPolymorphism("operation is not a polymorphism of the language");
    }

    // LP over weightings on `ops`: projections get a free weight, all other
    // operations a non-negative one.
    class WeightingLp
    {
    public:
        WeightingLp(const Language & language, std::vector<Operation> ops, int m, const Budget & budget) :
            _ops(std::move(ops)), _n(language.domain_size), _m(m)
        {
            for (std::size_t g = 0; g < _ops.size(); ++g) {
                _first_column.push_back(_columns.size());
                _columns.push_back({g, 1});
                if (is_projection(_ops[g]))
                    _columns.push_back({g, -1});
            }
            _base.num_vars = _columns.size();
            _base.has_free_constant = false;

            _base.rows.push_back(row_for(std::vector<Rational>(_ops.size(), Rational(1)), 0, RowKind::Eq));
            auto rows = improvement_rows(language, _ops, m, budget);
            check_rows(rows.size() + 2, budget);
            for (auto & r : rows) {
                for (auto & v : r)
                    v = -v;
                _base.rows.push_back(row_for(r, 0, RowKind::Geq));
            }
        }

        auto row_for(const std::vector<Rational> & per_op, const Rational & rhs, RowKind kind) const -> LinearRow
        {
            LinearRow row;
            row.coefficients.resize(_columns.size());
            for (std::size_t c = 0; c < _columns.size(); ++c)
                row.coefficients[c] = per_op[_columns[c].first] * _columns[c].second;
            row.rhs = rhs;
            row.kind = kind;
            return row;
        }

        auto unit(std::size_t g) const -> std::vector<Rational>
        {
            std::vector<Rational> v(_ops.size());
            v[g] = 1;
            return v;
        }

        auto solve(const std::vector<LinearRow> & extra) const -> std::optional<Weighting>
        {
            auto system = _base;
            system.rows.insert(system.rows.end(), extra.begin(), extra.end());
            auto result = solve_farkas(system);
            auto * solution = std::get_if<FarkasSolution>(&result);
            if (! solution)
                return std::nullopt;
            return to_weighting(*solution);
        }

        /// Solves with weight >= 1 forced on each operation of `at_least_one`
        /// (none of them projections) by shifting those variables.  Returns
        /// the weighting, or for each forced operation the multiplier its
        /// bound receives in the infeasibility certificate.
        auto solve_or_certify(const std::vector<std::size_t> & at_least_one, const std::vector<LinearRow> & extra = {}) const
            -> std::variant<Weighting, std::vector<Rational>>
        {
            auto system = _base;
            system.rows.insert(system.rows.end(), extra.begin(), extra.end());
            for (auto g : at_least_one)
                for (auto & row : system.rows)
                    row.rhs -= row.coefficients[_first_column[g]];
            auto result = solve_farkas(system);
            if (auto * c = std::get_if<FarkasCertificate>(&result)) {
                std::vector<Rational> bound(at_least_one.size());
                for (std::size_t k = 0; k < at_least_one.size(); ++k)
                    for (std::size_t j = 0; j < system.rows.size(); ++j)
                        bound[k] -= c->multipliers[j] * system.rows[j].coefficients[_first_column[at_least_one[k]]];
                return bound;
            }
            auto solution = std::get<FarkasSolution>(result);
            for (auto g : at_least_one)
                solution.values[_first_column[g]] += 1;
            return to_weighting(solution);
        }

        auto to_weighting(const FarkasSolution & solution) const -> Weighting
        {
            std::vector<std::pair<Operation, Rational>> raw;
            for (std::size_t c = 0; c < _columns.size(); ++c)
                if (sgn(solution.values[c]) != 0)
                    raw.emplace_back(_ops[_columns[c].first], solution.values[c] * _columns[c].second);
            return normalized(Weighting::make(_n, _m, std::move(raw)));
        }

    private:
        std::vector<Operation> _ops;
        int _n, _m;
        std::vector<std::pair<std::size_t, int>> _columns;
        std::vector<std::size_t> _first_column;
        LinearSystem _base;
    };

    auto verified(const Weighting & w, const Language & language) -> Weighting
    {
        if (! is_weighted_polymorphism(w, language).holds)
            throw InternalError("LP weighting failed the improvement check");
        return w;
    }
}

auto is_weighted_polymorphism(const Weighting & w, const Language & language, bool require_polymorphisms)
    -> ImprovementCheck
{
    if (w.domain_size != language.domain_size)
        throw StructuralError("weighting and language are over different domains");
    if (require_polymorphisms)
        for (const auto & [op, v] : w.entries)
            require_pol(language, op);

    const int n = language.domain_size;
    ImprovementCheck result;
    for (const auto & rho : language.functions) {
        auto relation = feas(rho);
        bool failed = false;
        for_each_list(relation.size(), w.arity, [&](const std::vector<std::size_t> & choice) {
            if (failed)
                return;
            auto cells = column_cells(relation, choice, rho.arity, n);
            ExtendedRational sum = 0;
            Rational finite = 0;
            bool infinite = false;
            for (const auto & [op, v] : w.entries) {
                const auto & c = rho.table[image_index(op, cells, n)];
                if (c.is_infinite()) {
                    if (sgn(v) > 0)
                        infinite = true;
                    continue;
                }
                finite += v * c.value();
            }
            sum = infinite ? INF : ExtendedRational(finite);
            if (infinite || sgn(finite) > 0) {
                failed = true;
                result.holds = false;
                result.function = rho.name;
                for (auto c : choice)
                    result.tuples.push_back(relation[c]);
                result.value = sum;
            }
        });
        if (failed)
            return result;
    }
    return result;
}

auto Superposition::weighting() const -> Weighting
{
    if (! proper)
        throw InvalidWeighting("improper superposition");
    if (weights.empty())
        throw InvalidWeighting("empty superposition");
    const auto & op = weights.front().first;
    return Weighting::make(op.domain_size, op.arity, weights);
}

auto superpose(const Weighting & w, const std::vector<Operation> & g) -> Superposition
{
    if (static_cast<int>(g.size()) != w.arity || g.empty())
        throw StructuralError("superposition needs one inner operation per argument");
    std::map<Operation, Rational> merged;
    for (const auto & gi : g)
        merged[gi];
    for (const auto & [f, v] : w.entries)
        merged[superposition(f, g)] += v;

    Superposition result;
    for (auto & [op, v] : merged) {
        if (sgn(v) < 0 && ! is_projection(op) && ! result.offending) {
            result.proper = false;
            result.offending = op;
        }
        result.weights.emplace_back(op, v);
    }
    // Keep only non-zero weights, but never return an empty list so the
    // arity remains recoverable.
    std::vector<std::pair<Operation, Rational>> nonzero;
    for (auto & e : result.weights)
        if (sgn(e.second) != 0)
            nonzero.push_back(e);
    if (! nonzero.empty())
        result.weights = std::move(nonzero);
    else
        result.weights.resize(1, result.weights.front());
    return result;
}

auto pol_plus_membership(const Language & language, const Operation & f, const Budget & budget, const OperationSet * pol)
    -> Membership
{
    language.validate();
    if (f.domain_size != language.domain_size)
        throw StructuralError("operation and language are over different domains");
    require_pol(language, f);
    if (is_projection(f))
        return {true, std::nullopt};

    OperationSet computed;
    if (! pol) {
        computed = enumerate_polymorphisms(language, f.arity, budget);
        pol = &computed;
    }
    WeightingLp lp(language, pol->operations, f.arity, budget);
    auto g = pol->index_of(f);
    auto outcome = lp.solve_or_certify({g});
    if (auto * w = std::get_if<Weighting>(&outcome))
        return {true, verified(*w, language)};
    return {false, std::nullopt};
}

auto positive_clone_report(const Language & language, int arity, const Budget & budget, EnumerationFilter filter)
    -> PositiveClone
{
    language.validate();
    PositiveClone result;
    result.pol = enumerate_polymorphisms(language, arity, budget, filter);
    result.plus = projections(language.domain_size, arity);

    const auto & ops = result.pol.operations;
    if (std::all_of(ops.begin(), ops.end(), [](const Operation & op) { return is_projection(op); }))
        return result;

    // Ask for weight >= 1 on every undecided operation at once.  A
    // certificate of infeasibility puts a positive multiplier only on rows of
    // operations that receive weight 0 from every weighted polymorphism, so
    // those are dropped and the rest retried.
    WeightingLp lp(language, ops, arity, budget);
    std::vector<std::size_t> undecided;
    for (std::size_t g = 0; g < ops.size(); ++g)
        if (! is_projection(ops[g]))
            undecided.push_back(g);
    while (! undecided.empty()) {
        auto outcome = lp.solve_or_certify(undecided);
        if (auto * w = std::get_if<Weighting>(&outcome)) {
            result.witnesses.push_back(verified(*w, language));
            for (const auto & op : w->support())
                result.plus.insert(op);
            break;
        }
        const auto & y = std::get<std::vector<Rational>>(outcome);
        std::vector<std::size_t> kept;
        for (std::size_t k = 0; k < undecided.size(); ++k)
            if (sgn(y[k]) <= 0)
                kept.push_back(undecided[k]);
        if (kept.size() == undecided.size())
            throw InternalError("infeasibility certificate excludes no operation");
        undecided = std::move(kept);
    }
    return result;
}

auto positive_clone(const Language & language, int arity, const Budget & budget) -> OperationSet
{
    return positive_clone_report(language, arity, budget).plus;
}

auto find_cyclic_wpol(const Language & language, int arity, const Budget & budget) -> std::optional<Weighting>
{
    language.validate();
    if (arity < 2)
        throw StructuralError("cyclic weighted polymorphisms are searched from arity 2");
    auto idpol = enumerate_polymorphisms(language, arity, budget, {.idempotent = true});

    std::vector<Operation> ops;
    std::vector<Rational> cyclic_mask;
    for (const auto & op : idpol.operations)
        if (is_projection(op) || is_cyclic(op)) {
            ops.push_back(op);
            cyclic_mask.emplace_back(is_projection(op) ? 0 : 1);
        }
    if (std::all_of(cyclic_mask.begin(), cyclic_mask.end(), [](const Rational & v) { return sgn(v) == 0; }))
        return std::nullopt;

    // Projections may only take negative weight here: bound them by 0 from
    // above through their positive part.
    WeightingLp lp(language, ops, arity, budget);
    std::vector<LinearRow> extra;
    extra.push_back(lp.row_for(cyclic_mask, 1, RowKind::Eq));
    for (std::size_t g = 0; g < ops.size(); ++g)
        if (is_projection(ops[g])) {
            auto u = lp.unit(g);
            for (auto & v : u)
                v = -v;
            extra.push_back(lp.row_for(u, 0, RowKind::Geq));
        }
    auto w = lp.solve(extra);
    if (! w)
        return std::nullopt;
    return verified(*w, language);
}

auto unary_positive_clone_is_bijective(const Language & language, const Budget & budget) -> bool
{
    auto plus = positive_clone(language, 1, budget);
    return std::all_of(plus.operations.begin(), plus.operations.end(), [](const Operation & f) { return is_bijective(f); });
}

auto Indicator::value(const Operation & f) const -> ExtendedRational
{
    if (f.table.size() != instance.variables.size())
        throw StructuralError("operation arity does not match the indicator");
    return cost(instance, f.table);
}

namespace
{
    auto tuple_name(const Tuple & t) -> std::string
    {
        std::string name = "x";
        for (std::size_t i = 0; i < t.size(); ++i)
            name += (i ? "_" : "") + std::to_string(t[i]);
        return name;
    }
}

auto build_indicator(const Language & language, int arity, const Budget & budget) -> Indicator
{
    language.validate();
    if (! unary_positive_clone_is_bijective(language, budget))
        throw CoreRequired("the indicator construction needs a core language");

    const int n = language.domain_size;
    auto report = positive_clone_report(language, arity, budget);

    struct Summand
    {
        const CostFunction * rho;
        std::vector<std::size_t> cells;
    };
    std::vector<Summand> summands;
    for (const auto & rho : language.functions) {
        auto relation = feas(rho);
        for_each_list(relation.size(), arity, [&](const std::vector<std::size_t> & choice) {
            summands.push_back({&rho, column_cells(relation, choice, rho.arity, n)});
            check_rows(summands.size(), budget);
        });
    }

    LinearSystem system;
    system.num_vars = summands.size();
    system.has_free_constant = true;
    for (const auto & f : report.pol.operations) {
        LinearRow row;
        for (const auto & s : summands) {
            const auto & v = s.rho->table[image_index(f, s.cells, n)];
            if (v.is_infinite())
                throw InternalError("polymorphism maps a feasible list to an infinite cost");
            row.coefficients.push_back(v.value());
        }
        const bool plus = report.plus.contains(f);
        row.rhs = plus ? 0 : 1;
        row.kind = plus ? RowKind::Eq : RowKind::Geq;
        system.rows.push_back(std::move(row));
    }
    auto result = solve_farkas(system);
    auto * solution = std::get_if<FarkasSolution>(&result);
    if (! solution)
        throw InternalError("indicator system is infeasible although the positive clone was computed exactly");

    Indicator indicator;
    indicator.P = solution->constant;
    indicator.pol = std::move(report.pol);
    indicator.plus = std::move(report.plus);
    indicator.z = solution->values;
    indicator.instance.domain_size = n;
    const auto cells = power(n, arity);
    for (std::size_t c = 0; c < cells; ++c)
        indicator.instance.variables.push_back(tuple_name(lex_tuple(c, n, arity)));
    std::map<std::pair<std::string, std::string>, CostFunction> scaled;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto & rho = *summands[k].rho;
        const auto & z = solution->values[k];
        auto key = std::make_pair(rho.name, format_rational(z));
        auto it = scaled.find(key);
        if (it == scaled.end()) {
            CostFunction f = rho;
            f.name = rho.name + "*" + format_rational(z);
            for (auto & v : f.table)
                v = v.scaled_keeping_infinity(z);
            it = scaled.emplace(key, std::move(f)).first;
        }
        std::vector<int> scope(summands[k].cells.begin(), summands[k].cells.end());
        indicator.instance.add_constraint(std::move(scope), it->second);
    }
    return indicator;
}

auto relation_indicator(const Language & language, const Relation & relation_in, const Budget & budget) -> RelationIndicator
{
    Relation relation = relation_in;
    std::sort(relation.begin(), relation.end());
    relation.erase(std::unique(relation.begin(), relation.end()), relation.end());
    if (relation.empty())
        throw StructuralError("relation must be non-empty");
    const int r = static_cast<int>(relation.front().size());
    for (const auto & t : relation) {
        if (static_cast<int>(t.size()) != r || r == 0)
            throw StructuralError("tuples of a relation must share one positive arity");
        for (int v : t)
            if (v < 0 || v >= language.domain_size)
                throw StructuralError("relation value outside the domain");
    }

    const int m = static_cast<int>(relation.size());
    const int n = language.domain_size;
    auto indicator = build_indicator(language, m, budget);

    std::vector<std::size_t> all(m);
    for (int i = 0; i < m; ++i)
        all[i] = i;
    auto cells = column_cells(relation, all, r, n);
    for (const auto & f : indicator.plus.operations) {
        Tuple image(r);
        for (int j = 0; j < r; ++j)
            image[j] = f.table[cells[j]];
        if (! std::binary_search(relation.begin(), relation.end(), image))
            throw IncompatibleRelation("relation is not preserved by the positive clone");
    }

    std::vector<int> projection(cells.begin(), cells.end());
    auto function = express(indicator.instance, projection, budget, "rho_R");
    return {std::move(function), indicator.P};
}

auto weighting_to_json(const Weighting & w) -> Json
{
    Json entries = Json::array();
    for (const auto & [op, v] : w.entries)
        entries.push_back(Json{{"operation_table", op.table}, {"weight", format_rational(v)}});
    return Json{{"arity", w.arity}, {"entries", entries}};
}

using namespace json_fields;

auto weighting_from_json(const Json & value, int domain_size, const std::string & where) -> Weighting
{
    check_keys(value, {"arity", "entries"}, where);
    auto arity = as_int(require(value, "arity", where), child(where, "arity"));
    if (arity < 1 || arity > 16)
        throw ParseError(child(where, "arity"), "arity must be between 1 and 16");
    auto ew = child(where, "entries");
    const auto & entries = as_array(require(value, "entries", where), ew);
    std::vector<std::pair<Operation, Rational>> raw;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto iw = child(ew, i);
        check_keys(entries[i], {"operation_table", "weight"}, iw);
        auto op = operation_from_json(Json{{"arity", arity}, {"table", require(entries[i], "operation_table", iw)}}, domain_size,
            child(iw, "operation_table"));
        Rational weight;
        try {
            weight = parse_rational(as_string(require(entries[i], "weight", iw), child(iw, "weight")));
        }
        catch (const ParseError & e) {
            throw ParseError(child(iw, "weight"), e.message());
        }
        raw.emplace_back(std::move(op), weight);
    }
    try {
        return Weighting::make(domain_size, static_cast<int>(arity), std::move(raw));
    }
    catch (const InvalidWeighting & e) {
        throw ParseError(where, e.what());
    }
}

} // namespace vcsp
