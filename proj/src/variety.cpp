#include <vcsp/core.hpp>
#include <vcsp/errors.hpp>
#include <vcsp/variety.hpp>

#include <algorithm>

namespace vcsp {

auto Congruence::make(int domain_size, std::vector<std::vector<int>> classes) -> Congruence
{
    std::vector<int> owner(domain_size, -1);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (classes[k].empty())
            throw StructuralError("empty congruence class");
        for (int d : classes[k]) {
            if (d < 0 || d >= domain_size)
                throw StructuralError("congruence element outside the domain");
            if (owner[d] >= 0)
                throw StructuralError("element " + std::to_string(d) + " lies in two congruence classes");
            owner[d] = static_cast<int>(k);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end())
        throw StructuralError("congruence classes do not cover the domain");
    for (auto & c : classes)
        std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end());
    return {domain_size, std::move(classes)};
}

auto Congruence::identity(int domain_size) -> Congruence
{
    std::vector<std::vector<int>> classes;
    for (int d = 0; d < domain_size; ++d)
        classes.push_back({d});
    return make(domain_size, std::move(classes));
}

auto Congruence::class_of(int d) const -> int
{
    for (std::size_t k = 0; k < classes.size(); ++k)
        if (std::binary_search(classes[k].begin(), classes[k].end(), d))
            return static_cast<int>(k);
    throw StructuralError("element outside the congruence's domain");
}

auto Congruence::check_compatible(const std::vector<Operation> & operations) const -> void
{
    std::vector<int> label(domain_size);
    for (int d = 0; d < domain_size; ++d)
        label[d] = class_of(d);
    for (std::size_t k = 0; k < operations.size(); ++k) {
        const auto & f = operations[k];
        if (f.domain_size != domain_size)
            throw StructuralError("operation over a different domain");
        // f respects the partition iff the image class depends only on the
        // argument classes.
        std::vector<int> seen(power(classes.size(), f.arity), -1);
        for (std::size_t c = 0; c < f.table.size(); ++c) {
            auto t = lex_tuple(c, domain_size, f.arity);
            std::size_t key = 0;
            for (int v : t)
                key = key * classes.size() + label[v];
            int image = label[f.table[c]];
            if (seen[key] < 0)
                seen[key] = image;
            else if (seen[key] != image)
                throw IncompatibleCongruence("operation " + std::to_string(k) + " does not preserve the congruence");
        }
    }
}

auto congruence_to_json(const Congruence & c) -> Json
{
    return Json{{"classes", c.classes}};
}

using namespace json_fields;

auto congruence_from_json(const Json & value, int domain_size, const std::string & where) -> Congruence
{
    check_keys(value, {"classes"}, where);
    auto cw = child(where, "classes");
    const auto & list = as_array(require(value, "classes", where), cw);
    std::vector<std::vector<int>> classes;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const auto & members = as_array(list[k], child(cw, k));
        std::vector<int> c;
        for (std::size_t i = 0; i < members.size(); ++i)
            c.push_back(static_cast<int>(as_int(members[i], child(child(cw, k), i))));
        classes.push_back(std::move(c));
    }
    try {
        return Congruence::make(domain_size, std::move(classes));
    }
    catch (const StructuralError & e) {
        throw ParseError(cw, e.what());
    }
}

auto integer_root(int size, int exponent) -> int
{
    if (exponent < 1)
        throw StructuralError("exponent must be positive");
    for (int a = 1; a <= size; ++a) {
        auto p = power(a, exponent);
        if (p == static_cast<std::uint64_t>(size))
            return a;
        if (p > static_cast<std::uint64_t>(size))
            break;
    }
    throw StructuralError("domain size " + std::to_string(size) + " is not a " + std::to_string(exponent) + "-th power");
}

auto pack(const Tuple & coordinates, int base) -> int
{
    return static_cast<int>(lex_index(coordinates, base));
}

auto unpack(int element, int base, int exponent) -> Tuple
{
    return lex_tuple(element, base, exponent);
}

auto power_lift(const CostFunction & f, int exponent) -> CostFunction
{
    const int a = integer_root(f.domain_size, exponent);
    const int arity = f.arity * exponent;
    CostFunction result(f.name, a, arity, std::vector<ExtendedRational>(power(a, arity)));
    Tuple x(arity, 0), packed(f.arity);
    std::size_t index = 0;
    do {
        for (int i = 0; i < f.arity; ++i)
            packed[i] = pack(Tuple(x.begin() + i * exponent, x.begin() + (i + 1) * exponent), a);
        result.table[index++] = f(packed);
    } while (next_tuple(x, a));
    return result;
}

auto power_lift(const Language & language, int exponent) -> Language
{
    language.validate();
    Language result;
    result.domain_size = integer_root(language.domain_size, exponent);
    for (const auto & f : language.functions)
        result.functions.push_back(power_lift(f, exponent));
    return result;
}

auto power_lift_instance(const Instance & instance, int exponent) -> Instance
{
    instance.validate();
    Instance result;
    result.domain_size = integer_root(instance.domain_size, exponent);
    for (const auto & v : instance.variables)
        for (int k = 1; k <= exponent; ++k)
            result.variables.push_back(v + "." + std::to_string(k));
    for (const auto & c : instance.constraints) {
        std::vector<int> scope;
        for (int v : c.scope)
            for (int k = 0; k < exponent; ++k)
                scope.push_back(v * exponent + k);
        result.constraints.push_back({std::move(scope), power_lift(c.function, exponent)});
    }
    return result;
}

auto power_pack_assignment(const Assignment & lifted, int base, int exponent) -> Assignment
{
    if (lifted.size() % exponent != 0)
        throw StructuralError("lifted assignment length is not a multiple of the exponent");
    Assignment result;
    for (std::size_t v = 0; v < lifted.size(); v += exponent)
        result.push_back(pack(Tuple(lifted.begin() + v, lifted.begin() + v + exponent), base));
    return result;
}

namespace
{
    auto quotient_lift_function(const CostFunction & f, const Congruence & congruence) -> CostFunction
    {
        if (f.domain_size != static_cast<int>(congruence.classes.size()))
            throw StructuralError("function '" + f.name + "' is not over the congruence classes");
        const int n = congruence.domain_size;
        CostFunction result(f.name, n, f.arity, std::vector<ExtendedRational>(power(n, f.arity)));
        Tuple x(f.arity, 0), classes(f.arity);
        std::size_t index = 0;
        do {
            for (int i = 0; i < f.arity; ++i)
                classes[i] = congruence.class_of(x[i]);
            result.table[index++] = f(classes);
        } while (next_tuple(x, n));
        return result;
    }
}

auto quotient_lift(const Language & language, const Congruence & congruence, const std::vector<Operation> & operations)
    -> Language
{
    language.validate();
    congruence.check_compatible(operations);
    Language result;
    result.domain_size = congruence.domain_size;
    for (const auto & f : language.functions)
        result.functions.push_back(quotient_lift_function(f, congruence));
    return result;
}

auto quotient_lift_instance(const Instance & instance, const Congruence & congruence) -> Instance
{
    instance.validate();
    Instance result;
    result.domain_size = congruence.domain_size;
    result.variables = instance.variables;
    for (const auto & c : instance.constraints)
        result.constraints.push_back({c.scope, quotient_lift_function(c.function, congruence)});
    return result;
}

auto quotient_assignment(const Assignment & lifted, const Congruence & congruence) -> Assignment
{
    Assignment result;
    for (int v : lifted)
        result.push_back(congruence.class_of(v));
    return result;
}

auto check_subuniverse(const std::vector<int> & subset, const std::vector<Operation> & operations) -> void
{
    for (std::size_t k = 0; k < operations.size(); ++k) {
        const auto & f = operations[k];
        const int s = static_cast<int>(subset.size());
        Tuple pick(f.arity, 0), args(f.arity);
        do {
            for (int i = 0; i < f.arity; ++i)
                args[i] = subset[pick[i]];
            if (! std::binary_search(subset.begin(), subset.end(), f(args)))
                throw NotASubuniverse("operation " + std::to_string(k) + " maps the subset outside itself");
        } while (next_tuple(pick, s));
    }
}

auto subalgebra_restrict(const Language & language, const std::vector<int> & subset, const std::vector<Operation> & operations)
    -> Language
{
    auto result = restrict_language(language, subset);
    check_subuniverse(subset, operations);
    return result;
}

namespace
{
    auto extend_function(const CostFunction & f, const std::vector<int> & subset, int n) -> CostFunction
    {
        if (f.domain_size != static_cast<int>(subset.size()))
            throw StructuralError("function '" + f.name + "' is not over the subset");
        std::vector<int> position(n, -1);
        for (std::size_t i = 0; i < subset.size(); ++i)
            position.at(subset[i]) = static_cast<int>(i);
        CostFunction result(f.name, n, f.arity, std::vector<ExtendedRational>(power(n, f.arity), INF));
        Tuple x(f.arity, 0), inside(f.arity);
        std::size_t index = 0;
        do {
            bool ok = true;
            for (int i = 0; i < f.arity && ok; ++i) {
                inside[i] = position[x[i]];
                ok = inside[i] >= 0;
            }
            if (ok)
                result.table[index] = f(inside);
            ++index;
        } while (next_tuple(x, n));
        return result;
    }
}

auto subalgebra_extend(const Language & language, const std::vector<int> & subset, int domain_size) -> Language
{
    restrict_language(Language(domain_size, {}), subset);
    Language result;
    result.domain_size = domain_size;
    for (const auto & f : language.functions)
        result.functions.push_back(extend_function(f, subset, domain_size));
    return result;
}

auto subalgebra_extend_instance(const Instance & instance, const std::vector<int> & subset, int domain_size) -> Instance
{
    instance.validate();
    restrict_language(Language(domain_size, {}), subset);
    Instance result;
    result.domain_size = domain_size;
    result.variables = instance.variables;
    for (const auto & c : instance.constraints)
        result.constraints.push_back({c.scope, extend_function(c.function, subset, domain_size)});
    return result;
}

} // namespace vcsp
