#include <vcsp/errors.hpp>
#include <vcsp/language.hpp>

#include <algorithm>
#include <set>

namespace vcsp {

auto power(std::uint64_t n, std::uint64_t k) -> std::uint64_t
{
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (n != 0 && result > (std::uint64_t{1} << 62) / n)
            throw StructuralError("size " + std::to_string(n) + "^" + std::to_string(k) + " overflows");
        result *= n;
    }
    return result;
}

auto lex_index(const Tuple & t, int n) -> std::size_t
{
    std::size_t index = 0;
    for (int v : t)
        index = index * n + v;
    return index;
}

auto lex_tuple(std::size_t index, int n, int arity) -> Tuple
{
    Tuple t(arity);
    for (int i = arity - 1; i >= 0; --i) {
        t[i] = static_cast<int>(index % n);
        index /= n;
    }
    return t;
}

auto next_tuple(Tuple & t, int n) -> bool
{
    for (auto i = t.size(); i > 0; --i) {
        if (++t[i - 1] < n)
            return true;
        t[i - 1] = 0;
    }
    return false;
}

Operation::Operation(int domain_size, int arity, std::vector<int> table) :
    domain_size(domain_size), arity(arity), table(std::move(table))
{
    validate();
}

auto Operation::projection(int domain_size, int arity, int coordinate) -> Operation
{
    if (coordinate < 0 || coordinate >= arity)
        throw StructuralError("projection coordinate out of range");
    std::vector<int> table(power(domain_size, arity));
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = lex_tuple(i, domain_size, arity)[coordinate];
    return {domain_size, arity, std::move(table)};
}

auto Operation::validate() const -> void
{
    if (domain_size < 1)
        throw StructuralError("domain size must be positive");
    if (arity < 1)
        throw StructuralError("operation arity must be positive");
    if (table.size() != power(domain_size, arity))
        throw StructuralError("operation table has " + std::to_string(table.size()) + " entries, expected " +
            std::to_string(power(domain_size, arity)));
    for (int v : table)
        if (v < 0 || v >= domain_size)
            throw StructuralError("operation value " + std::to_string(v) + " outside the domain");
}

auto superposition(const Operation & f, const std::vector<Operation> & g) -> Operation
{
    if (static_cast<int>(g.size()) != f.arity)
        throw StructuralError("superposition needs one inner operation per argument");
    if (g.empty())
        throw StructuralError("superposition of a nullary operation");
    const int n = f.domain_size, l = g.front().arity;
    for (const auto & gi : g)
        if (gi.arity != l || gi.domain_size != n)
            throw StructuralError("inner operations of a superposition must share arity and domain");

    std::vector<int> table(g.front().table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        std::size_t index = 0;
        for (const auto & gi : g)
            index = index * n + gi.table[i];
        table[i] = f.table[index];
    }
    return {n, l, std::move(table)};
}

CostFunction::CostFunction(std::string name, int domain_size, int arity, std::vector<ExtendedRational> table) :
    name(std::move(name)), domain_size(domain_size), arity(arity), table(std::move(table))
{
    validate();
}

auto CostFunction::validate() const -> void
{
    if (domain_size < 1)
        throw StructuralError("domain size must be positive");
    if (arity < 1)
        throw StructuralError("cost function '" + name + "' must have positive arity");
    if (table.size() != power(domain_size, arity))
        throw StructuralError("cost function '" + name + "' has " + std::to_string(table.size()) + " values, expected " +
            std::to_string(power(domain_size, arity)));
}

auto feas(const CostFunction & rho) -> Relation
{
    Relation result;
    for (std::size_t i = 0; i < rho.table.size(); ++i)
        if (rho.table[i].is_finite())
            result.push_back(lex_tuple(i, rho.domain_size, rho.arity));
    return result;
}

auto constant_indicator(int domain_size, int d) -> CostFunction
{
    std::vector<ExtendedRational> table(domain_size, INF);
    table.at(d) = 0;
    return {"N_" + std::to_string(d), domain_size, 1, std::move(table)};
}

auto equality_function(int domain_size) -> CostFunction
{
    std::vector<ExtendedRational> table(power(domain_size, 2), INF);
    for (int d = 0; d < domain_size; ++d)
        table[d * domain_size + d] = 0;
    return {"eq", domain_size, 2, std::move(table)};
}

auto to_string(LanguageKind kind) -> std::string
{
    switch (kind) {
        case LanguageKind::Crisp: return "crisp";
        case LanguageKind::FiniteValued: return "finite-valued";
        case LanguageKind::GeneralValued: return "general-valued";
    }
    return "?";
}

Language::Language(int domain_size, std::vector<CostFunction> functions) :
    domain_size(domain_size), functions(std::move(functions))
{
    validate();
}

auto Language::validate() const -> void
{
    if (domain_size < 1)
        throw StructuralError("domain size must be positive");
    std::set<std::string> names;
    for (const auto & f : functions) {
        if (f.domain_size != domain_size)
            throw StructuralError("cost function '" + f.name + "' is over a different domain");
        f.validate();
        if (! names.insert(f.name).second)
            throw StructuralError("duplicate cost function name '" + f.name + "'");
    }
}

auto Language::find(const std::string & name) const -> const CostFunction *
{
    for (const auto & f : functions)
        if (f.name == name)
            return &f;
    return nullptr;
}

auto Language::at(const std::string & name) const -> const CostFunction &
{
    if (auto f = find(name))
        return *f;
    throw StructuralError("unknown cost function '" + name + "'");
}

auto classify_kind(const Language & language) -> LanguageKind
{
    bool crisp = true, finite = true;
    for (const auto & f : language.functions)
        for (const auto & v : f.table) {
            if (v.is_infinite())
                finite = false;
            else if (sgn(v.value()) != 0)
                crisp = false;
        }
    if (crisp)
        return LanguageKind::Crisp;
    return finite ? LanguageKind::FiniteValued : LanguageKind::GeneralValued;
}

auto is_polymorphism(const Operation & f, const Language & language) -> bool
{
    if (f.domain_size != language.domain_size)
        throw StructuralError("operation and language are over different domains");
    for (const auto & rho : language.functions) {
        auto relation = feas(rho);
        if (relation.empty())
            continue;
        std::vector<std::size_t> choice(f.arity, 0);
        Tuple args(f.arity), image(rho.arity);
        while (true) {
            for (int j = 0; j < rho.arity; ++j) {
                for (int i = 0; i < f.arity; ++i)
                    args[i] = relation[choice[i]][j];
                image[j] = f(args);
            }
            if (rho(image).is_infinite())
                return false;
            int i = f.arity;
            while (i > 0 && ++choice[i - 1] == relation.size())
                choice[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return true;
}

} // namespace vcsp
