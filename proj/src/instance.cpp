#include <vcsp/errors.hpp>
#include <vcsp/instance.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <set>

namespace vcsp {

auto Instance::validate() const -> void
{
    if (domain_size < 1)
        throw StructuralError("domain size must be positive");
    std::set<std::string> names;
    for (const auto & v : variables)
        if (! names.insert(v).second)
            throw StructuralError("duplicate variable '" + v + "'");
    for (const auto & c : constraints) {
        if (c.function.domain_size != domain_size)
            throw StructuralError("constraint function '" + c.function.name + "' is over a different domain");
        if (static_cast<int>(c.scope.size()) != c.function.arity)
            throw StructuralError("scope length differs from the arity of '" + c.function.name + "'");
        for (int v : c.scope)
            if (v < 0 || v >= static_cast<int>(variables.size()))
                throw StructuralError("scope refers to an unknown variable");
    }
}

auto Instance::variable(const std::string & name) const -> int
{
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end())
        throw StructuralError("unknown variable '" + name + "'");
    return static_cast<int>(it - variables.begin());
}

auto Instance::add_variable(const std::string & name) -> int
{
    if (std::find(variables.begin(), variables.end(), name) != variables.end())
        throw StructuralError("duplicate variable '" + name + "'");
    variables.push_back(name);
    return static_cast<int>(variables.size()) - 1;
}

auto Instance::add_constraint(std::vector<int> scope, const CostFunction & function) -> void
{
    constraints.push_back({std::move(scope), function});
}

auto cost(const Instance & instance, const Assignment & assignment) -> ExtendedRational
{
    if (assignment.size() != instance.variables.size())
        throw StructuralError("assignment is not total");
    ExtendedRational total = 0;
    Tuple args;
    for (const auto & c : instance.constraints) {
        args.clear();
        for (int v : c.scope)
            args.push_back(assignment[v]);
        total += c.function(args);
        if (total.is_infinite())
            break;
    }
    return total;
}

namespace
{
    // Visits every assignment of finite cost in lexicographic order.  A
    // constraint is charged once its last scope variable is fixed, so an
    // infinite partial sum prunes the whole subtree.
    auto for_each_finite(const Instance & instance, const Budget & budget,
        const std::function<void(const Assignment &, const Rational &)> & visit) -> void
    {
        instance.validate();
        const auto n = instance.domain_size;
        const auto nv = instance.variables.size();
        std::uint64_t count;
        try {
            count = power(n, nv);
        }
        catch (const StructuralError &) {
            count = ~std::uint64_t{0};
        }
        if (count > budget.assignments)
            throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(nv) + " assignments exceed the cap of " +
                std::to_string(budget.assignments));

        std::vector<std::vector<const Constraint *>> due(nv + 1);
        for (const auto & c : instance.constraints) {
            std::size_t last = 0;
            for (int v : c.scope)
                last = std::max(last, static_cast<std::size_t>(v) + 1);
            due[last].push_back(&c);
        }

        Assignment s(nv, 0);
        std::vector<Rational> partial(nv + 1);
        Tuple args;
        auto charge = [&](std::size_t level, Rational & sum) {
            for (auto * c : due[level]) {
                args.clear();
                for (int v : c->scope)
                    args.push_back(s[v]);
                const auto & value = c->function(args);
                if (value.is_infinite())
                    return false;
                sum += value.value();
            }
            return true;
        };

        partial[0] = 0;
        if (! charge(0, partial[0]))
            return;
        if (nv == 0) {
            visit(s, partial[0]);
            return;
        }

        std::size_t depth = 0;
        s[0] = -1;
        while (true) {
            if (++s[depth] == n) {
                if (depth == 0)
                    return;
                --depth;
                continue;
            }
            partial[depth + 1] = partial[depth];
            if (! charge(depth + 1, partial[depth + 1]))
                continue;
            if (depth + 1 == nv)
                visit(s, partial[nv]);
            else {
                ++depth;
                s[depth] = -1;
            }
        }
    }
}

auto solve(const Instance & instance, const Budget & budget) -> SolveResult
{
    SolveResult best{INF, Assignment(instance.variables.size(), 0)};
    for_each_finite(instance, budget, [&](const Assignment & s, const Rational & value) {
        if (best.cost.is_infinite() || value < best.cost.value()) {
            best.cost = value;
            best.assignment = s;
        }
    });
    return best;
}

auto express(const Instance & instance, const std::vector<int> & projection, const Budget & budget, const std::string & name)
    -> CostFunction
{
    if (projection.empty())
        throw StructuralError("expressing needs at least one variable");
    for (int v : projection)
        if (v < 0 || v >= static_cast<int>(instance.variables.size()))
            throw StructuralError("projection refers to an unknown variable");

    const int n = instance.domain_size;
    std::vector<ExtendedRational> table(power(n, projection.size()), INF);
    for_each_finite(instance, budget, [&](const Assignment & s, const Rational & value) {
        std::size_t index = 0;
        for (int v : projection)
            index = index * n + s[v];
        if (table[index].is_infinite() || value < table[index].value())
            table[index] = value;
    });
    return {name, n, static_cast<int>(projection.size()), std::move(table)};
}

auto scale(const CostFunction & f, const Rational & c) -> CostFunction
{
    auto result = f;
    for (auto & v : result.table)
        v = v.scaled(c);
    return result;
}

auto add_constant(const CostFunction & f, const Rational & c) -> CostFunction
{
    auto result = f;
    for (auto & v : result.table)
        v += ExtendedRational(c);
    return result;
}

auto add(const CostFunction & f, const std::vector<int> & f_map, const CostFunction & g, const std::vector<int> & g_map,
    int arity) -> CostFunction
{
    if (f.domain_size != g.domain_size)
        throw StructuralError("added functions must share the domain");
    if (static_cast<int>(f_map.size()) != f.arity || static_cast<int>(g_map.size()) != g.arity)
        throw StructuralError("index map length differs from the arity");
    if (arity < 1)
        throw StructuralError("sum must have positive arity");
    std::vector<bool> used(arity, false);
    for (const auto * map : {&f_map, &g_map})
        for (int i : *map) {
            if (i < 0 || i >= arity)
                throw StructuralError("index map entry out of range");
            used[i] = true;
        }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw StructuralError("every coordinate of the sum must be used");

    const int n = f.domain_size;
    CostFunction result(f.name + "+" + g.name, n, arity, std::vector<ExtendedRational>(power(n, arity)));
    Tuple x(arity, 0), fx(f.arity), gx(g.arity);
    std::size_t index = 0;
    do {
        for (int i = 0; i < f.arity; ++i)
            fx[i] = x[f_map[i]];
        for (int i = 0; i < g.arity; ++i)
            gx[i] = x[g_map[i]];
        result.table[index++] = f(fx) + g(gx);
    } while (next_tuple(x, n));
    return result;
}

auto minimise(const CostFunction & f, const std::vector<int> & coordinates) -> CostFunction
{
    std::vector<bool> removed(f.arity, false);
    for (int i : coordinates) {
        if (i < 0 || i >= f.arity)
            throw StructuralError("coordinate out of range");
        removed[i] = true;
    }
    std::vector<int> kept;
    for (int i = 0; i < f.arity; ++i)
        if (! removed[i])
            kept.push_back(i);
    if (kept.empty())
        throw StructuralError("cannot minimise over every coordinate");

    const int n = f.domain_size;
    CostFunction result(f.name, n, static_cast<int>(kept.size()), std::vector<ExtendedRational>(power(n, kept.size()), INF));
    for (std::size_t i = 0; i < f.table.size(); ++i) {
        auto t = lex_tuple(i, n, f.arity);
        std::size_t index = 0;
        for (int k : kept)
            index = index * n + t[k];
        if (f.table[i] < result.table[index])
            result.table[index] = f.table[i];
    }
    return result;
}

auto instance_language(const Instance & instance) -> Language
{
    Language language;
    language.domain_size = instance.domain_size;
    for (const auto & c : instance.constraints) {
        if (auto existing = language.find(c.function.name)) {
            if (! (*existing == c.function))
                throw StructuralError("two different cost functions are both named '" + c.function.name + "'");
            continue;
        }
        language.functions.push_back(c.function);
    }
    return language;
}

auto instance_to_json(const Instance & instance) -> Json
{
    Json constraints = Json::array();
    for (const auto & c : instance.constraints) {
        Json scope = Json::array();
        for (int v : c.scope)
            scope.push_back(instance.variables[v]);
        constraints.push_back(Json{{"scope", scope}, {"function", c.function.name}});
    }
    return Json{{"language", language_to_json(instance_language(instance))},
        {"domain_size", instance.domain_size},
        {"variables", instance.variables},
        {"constraints", constraints}};
}

using namespace json_fields;

auto instance_from_json(const Json & value, const std::string & base_dir, const std::string & where) -> Instance
{
    check_keys(value, {"language", "domain_size", "variables", "constraints"}, where);
    const auto & lang_field = require(value, "language", where);
    Language language;
    if (lang_field.is_string()) {
        auto path = std::filesystem::path(base_dir) / lang_field.get<std::string>();
        language = load_language(path.string());
    }
    else
        language = language_from_json(lang_field, child(where, "language"));

    Instance instance;
    auto n = as_int(require(value, "domain_size", where), child(where, "domain_size"));
    if (n != language.domain_size)
        throw ParseError(child(where, "domain_size"), "differs from the language's domain size");
    instance.domain_size = static_cast<int>(n);

    auto vw = child(where, "variables");
    const auto & vars = as_array(require(value, "variables", where), vw);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto name = as_string(vars[i], child(vw, i));
        if (std::find(instance.variables.begin(), instance.variables.end(), name) != instance.variables.end())
            throw ParseError(child(vw, i), "duplicate variable '" + name + "'");
        instance.variables.push_back(name);
    }

    auto cw = child(where, "constraints");
    const auto & list = as_array(require(value, "constraints", where), cw);
    for (std::size_t k = 0; k < list.size(); ++k) {
        auto kw = child(cw, k);
        check_keys(list[k], {"scope", "function"}, kw);
        auto fname = as_string(require(list[k], "function", kw), child(kw, "function"));
        const auto * f = language.find(fname);
        if (! f)
            throw ParseError(child(kw, "function"), "unknown cost function '" + fname + "'");
        auto sw = child(kw, "scope");
        const auto & scope = as_array(require(list[k], "scope", kw), sw);
        if (static_cast<int>(scope.size()) != f->arity)
            throw ParseError(sw, "scope length " + std::to_string(scope.size()) + " differs from arity " + std::to_string(f->arity));
        std::vector<int> indices;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            auto name = as_string(scope[i], child(sw, i));
            auto it = std::find(instance.variables.begin(), instance.variables.end(), name);
            if (it == instance.variables.end())
                throw ParseError(child(sw, i), "unknown variable '" + name + "'");
            indices.push_back(static_cast<int>(it - instance.variables.begin()));
        }
        instance.constraints.push_back({std::move(indices), *f});
    }
    return instance;
}

auto load_instance(const std::string & path) -> Instance
{
    try {
        auto base = std::filesystem::path(path).parent_path().string();
        return instance_from_json(parse_json(read_text_file(path)), base);
    }
    catch (const ParseError & e) {
        if (e.where().rfind(path, 0) == 0)
            throw;
        throw ParseError(path + (e.where().empty() ? "" : ":" + e.where()), e.message());
    }
}

} // namespace vcsp
