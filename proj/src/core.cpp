#include <vcsp/core.hpp>
#include <vcsp/errors.hpp>

#include <algorithm>

namespace vcsp {

auto core_report(const Language & language, const Budget & budget) -> CoreReport
{
    auto report = positive_clone_report(language, 1, budget);
    CoreReport result;
    for (const auto & f : report.plus.operations) {
        if (is_bijective(f))
            continue;
        result.is_core = false;
        result.witness = f;
        for (const auto & w : report.witnesses)
            if (sgn(w.weight(f)) > 0) {
                result.witness_weighting = w;
                break;
            }
        break;
    }
    return result;
}

namespace
{
    auto check_subset(const std::vector<int> & subset, int n) -> void
    {
        if (subset.empty())
            throw StructuralError("subset must be non-empty");
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (subset[i] < 0 || subset[i] >= n)
                throw StructuralError("subset element outside the domain");
            if (i > 0 && subset[i] <= subset[i - 1])
                throw StructuralError("subset must be strictly increasing");
        }
    }

    auto restrict_function(const CostFunction & f, const std::vector<int> & subset) -> CostFunction
    {
        const int k = static_cast<int>(subset.size());
        CostFunction result(f.name, k, f.arity, std::vector<ExtendedRational>(power(k, f.arity)));
        Tuple t(f.arity, 0), original(f.arity);
        std::size_t index = 0;
        do {
            for (int i = 0; i < f.arity; ++i)
                original[i] = subset[t[i]];
            result.table[index++] = f(original);
        } while (next_tuple(t, k));
        return result;
    }
}

auto restrict_language(const Language & language, const std::vector<int> & subset) -> Language
{
    check_subset(subset, language.domain_size);
    Language result;
    result.domain_size = static_cast<int>(subset.size());
    for (const auto & f : language.functions)
        result.functions.push_back(restrict_function(f, subset));
    return result;
}

auto restrict_instance(const Instance & instance, const std::vector<int> & subset) -> Instance
{
    check_subset(subset, instance.domain_size);
    Instance result;
    result.domain_size = static_cast<int>(subset.size());
    result.variables = instance.variables;
    for (const auto & c : instance.constraints)
        result.constraints.push_back({c.scope, restrict_function(c.function, subset)});
    return result;
}

auto compute_core(const Language & language, const Budget & budget) -> CoreResult
{
    language.validate();
    CoreResult result;
    result.core = language;
    for (int d = 0; d < language.domain_size; ++d)
        result.subset.push_back(d);
    result.chain.push_back(result.subset);

    while (true) {
        auto report = core_report(result.core, budget);
        if (report.is_core)
            return result;
        const auto & f = *report.witness;
        std::vector<int> image(f.table.begin(), f.table.end());
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());

        result.witnesses.push_back(f);
        result.core = restrict_language(result.core, image);
        std::vector<int> next;
        for (int v : image)
            next.push_back(result.subset[v]);
        result.subset = std::move(next);
        result.chain.push_back(result.subset);
    }
}

auto is_rigid(const Language & language, const Budget & budget) -> bool
{
    auto pol = enumerate_polymorphisms(language, 1, budget);
    return pol.size() == 1 && is_projection(pol.operations.front());
}

auto rigid_core(const Language & language, const Budget & budget) -> Language
{
    language.validate();
    if (! unary_positive_clone_is_bijective(language, budget))
        throw CoreRequired("the rigid core is defined for core languages");
    auto result = language;
    for (int d = 0; d < language.domain_size; ++d) {
        auto f = constant_indicator(language.domain_size, d);
        while (result.find(f.name))
            f.name += "'";
        result.functions.push_back(std::move(f));
    }
    if (! is_rigid(result, budget))
        throw InternalError("adding the constants did not make the language rigid");
    return result;
}

namespace
{
    auto fresh_name(const std::vector<std::string> & taken, const std::string & base) -> std::string
    {
        auto name = base;
        while (std::find(taken.begin(), taken.end(), name) != taken.end())
            name += "'";
        return name;
    }

    // The element d if `f` is N_d, else -1.
    auto constant_of(const CostFunction & f) -> int
    {
        if (f.arity != 1)
            return -1;
        for (int d = 0; d < f.domain_size; ++d)
            if (f.table == constant_indicator(f.domain_size, d).table)
                return d;
        return -1;
    }
}

auto reduce_rigid_instance(const Language & language, const Instance & rigid_instance, const Budget & budget) -> RigidReduction
{
    language.validate();
    rigid_instance.validate();
    const int n = language.domain_size;
    if (rigid_instance.domain_size != n)
        throw StructuralError("instance and language are over different domains");

    auto indicator = build_indicator(language, 1, budget);
    std::vector<int> all(n);
    for (int d = 0; d < n; ++d)
        all[d] = d;

    RigidReduction result;
    result.N = express(indicator.instance, all, budget, "N");
    while (language.find(result.N.name))
        result.N.name += "'";
    result.P = indicator.P;
    for (const auto & g : indicator.pol.operations) {
        if (indicator.plus.contains(g))
            continue;
        auto value = result.N(g.table).value();
        if (! result.Q || value < *result.Q)
            result.Q = value;
    }

    auto equality = equality_function(n);
    while (language.find(equality.name) || equality.name == result.N.name)
        equality.name += "'";

    auto & out = result.instance;
    out.domain_size = n;
    out.variables = rigid_instance.variables;
    result.original_variables = static_cast<int>(out.variables.size());
    for (int d = 0; d < n; ++d)
        result.anchors.push_back(out.add_variable(fresh_name(out.variables, "v_" + std::to_string(d))));

    result.mass = 0;
    for (const auto & c : rigid_instance.constraints) {
        int d = constant_of(c.function);
        const auto * own = language.find(c.function.name);
        if (own && *own == c.function)
            d = -1;
        if (d >= 0) {
            out.add_constraint({c.scope[0], result.anchors[d]}, equality);
            continue;
        }
        if (std::none_of(language.functions.begin(), language.functions.end(), [&](const CostFunction & f) { return f == c.function; }))
            throw StructuralError("constraint function '" + c.function.name + "' belongs neither to the language nor to its constants");
        out.add_constraint(c.scope, c.function);
        for (const auto & v : c.function.table)
            if (v.is_finite())
                result.mass += abs(v.value());
    }

    result.copies = 1;
    if (result.Q) {
        Rational gap = *result.Q - result.P;
        if (sgn(gap) <= 0)
            throw InternalError("indicator gap is not positive");
        mpz_class m(Rational(result.mass / gap));
        m += 1;
        if (m > 1'000'000)
            throw BudgetExceeded("rigid-core reduction would need more than 10^6 copies of N");
        result.copies = std::max<int>(1, static_cast<int>(m.get_si()));
    }
    for (int k = 0; k < result.copies; ++k)
        out.add_constraint(result.anchors, result.N);
    return result;
}

auto recover_rigid_optimum(const RigidReduction & reduction, const SolveResult & reduced) -> SolveResult
{
    const auto n = reduction.anchors.size();
    SolveResult result{INF, Assignment(reduction.original_variables, 0)};
    if (reduced.cost.is_infinite())
        return result;
    Tuple anchor(n);
    for (std::size_t d = 0; d < n; ++d)
        anchor[d] = reduced.assignment[reduction.anchors[d]];
    if (reduction.N(anchor) != ExtendedRational(reduction.P))
        return result;

    // g: d -> s(v_d) is a bijection in the positive clone; undo it.
    std::vector<int> inverse(n, -1);
    for (std::size_t d = 0; d < n; ++d)
        inverse[anchor[d]] = static_cast<int>(d);
    if (std::find(inverse.begin(), inverse.end(), -1) != inverse.end())
        throw InternalError("anchor assignment at the minimum is not a bijection");
    for (int v = 0; v < reduction.original_variables; ++v)
        result.assignment[v] = inverse[reduced.assignment[v]];
    result.cost = Rational(reduced.cost.value() - reduction.P * reduction.copies);
    return result;
}

auto core_report_to_json(const CoreReport & report) -> Json
{
    Json result{{"is_core", report.is_core}};
    if (report.witness)
        result["witness"] = operation_to_json(*report.witness);
    if (report.witness_weighting)
        result["witness_weighting"] = weighting_to_json(*report.witness_weighting);
    return result;
}

} // namespace vcsp
