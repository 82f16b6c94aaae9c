#pragma once

#include <vcsp/budget.hpp>
#include <vcsp/language.hpp>
#include <vcsp/language_io.hpp>

#include <string>
#include <vector>

namespace vcsp {

struct Constraint
{
    std::vector<int> scope;
    CostFunction function;

    friend auto operator==(const Constraint &, const Constraint &) -> bool = default;
};

/// Variables are referred to by index into `variables`.
struct Instance
{
    int domain_size = 1;
    std::vector<std::string> variables;
    std::vector<Constraint> constraints;

    auto validate() const -> void;
    auto variable(const std::string & name) const -> int;
    auto add_variable(const std::string & name) -> int;
    auto add_constraint(std::vector<int> scope, const CostFunction & function) -> void;

    friend auto operator==(const Instance &, const Instance &) -> bool = default;
};

/// Value of every variable, by index.
using Assignment = std::vector<int>;

auto cost(const Instance & instance, const Assignment & assignment) -> ExtendedRational;

struct SolveResult
{
    ExtendedRational cost;
    Assignment assignment;
};

/// Exhaustive minimisation.  The lexicographically least optimal assignment
/// is returned; if every assignment is infeasible the cost is INF and the
/// assignment is all zeros.
auto solve(const Instance & instance, const Budget & budget = {}) -> SolveResult;

/// The cost function expressed by `instance` on the listed variables
/// (repeats allowed): the minimum cost over assignments agreeing with the
/// argument tuple, or INF when no assignment does.
auto express(const Instance & instance, const std::vector<int> & projection, const Budget & budget = {},
    const std::string & name = "expressed") -> CostFunction;

/// Generators of weighted relational clones.
auto scale(const CostFunction & f, const Rational & c) -> CostFunction;
auto add_constant(const CostFunction & f, const Rational & c) -> CostFunction;

/// h(x_0..x_{r-1}) = f(x_{f_map[0]}, ...) + g(x_{g_map[0]}, ...); every
/// coordinate of h must be used by at least one of the maps.
auto add(const CostFunction & f, const std::vector<int> & f_map, const CostFunction & g, const std::vector<int> & g_map,
    int arity) -> CostFunction;

/// Removes the listed coordinates (0-based) by minimising over them.
auto minimise(const CostFunction & f, const std::vector<int> & coordinates) -> CostFunction;

/// Distinct cost functions used by the constraints, in first-use order.
/// Throws StructuralError if one name is used for two different tables.
auto instance_language(const Instance & instance) -> Language;

/// {"language": <language>, "domain_size", "variables", "constraints"}.
auto instance_to_json(const Instance & instance) -> Json;

/// Resolves "language" either as an inline object or a path relative to
/// `base_dir`.
auto instance_from_json(const Json & value, const std::string & base_dir, const std::string & where = "") -> Instance;
auto load_instance(const std::string & path) -> Instance;

} // namespace vcsp
