#pragma once

#include <vcsp/budget.hpp>
#include <vcsp/instance.hpp>
#include <vcsp/language.hpp>
#include <vcsp/weighting.hpp>

#include <optional>
#include <vector>

namespace vcsp {

struct CoreReport
{
    bool is_core = true;
    /// Lexicographically least non-bijective unary member of the positive
    /// clone, with a weighted polymorphism giving it positive weight.
    std::optional<Operation> witness;
    std::optional<Weighting> witness_weighting;
};

auto core_report(const Language & language, const Budget & budget = {}) -> CoreReport;

/// Γ[S]: every table restricted to S, whose elements are renumbered
/// 0..|S|-1 in increasing order.
auto restrict_language(const Language & language, const std::vector<int> & subset) -> Language;

/// Instance with the same variables and constraints whose functions are
/// restricted to S.
auto restrict_instance(const Instance & instance, const std::vector<int> & subset) -> Instance;

struct CoreResult
{
    Language core;
    /// Surviving elements of the original domain, increasing.
    std::vector<int> subset;
    /// Domains (in original elements) after each restriction, starting with D.
    std::vector<std::vector<int>> chain;
    /// Unary witness used at each step, over the domain of that step.
    std::vector<Operation> witnesses;
};

auto compute_core(const Language & language, const Budget & budget = {}) -> CoreResult;

/// Γ together with N_0..N_{n-1}.  Throws CoreRequired if Γ is not a core.
auto rigid_core(const Language & language, const Budget & budget = {}) -> Language;

/// True iff the only unary polymorphism is the identity.
auto is_rigid(const Language & language, const Budget & budget = {}) -> bool;

struct RigidReduction
{
    Instance instance;
    /// Index in `instance.variables` of v_d for each domain element d.
    std::vector<int> anchors;
    /// Number of variables carried over from the rigid-core instance.
    int original_variables = 0;
    CostFunction N;
    Rational P;
    /// Least N value off the positive clone; absent when Pol_1 = Pol⁺_1.
    std::optional<Rational> Q;
    /// Sum of |cost| over feasible tuples of every carried-over constraint.
    Rational mass;
    int copies = 1;
};

/// Replaces every constraint ((v), N_d) of an instance over Γ_c by
/// ((v, v_d), =) and appends copies of ((v_0..v_{n-1}), N) so that optima
/// correspond.  Throws CoreRequired if Γ is not a core.
auto reduce_rigid_instance(const Language & language, const Instance & rigid_instance, const Budget & budget = {})
    -> RigidReduction;

/// Optimum of the rigid-core instance from an optimum of the reduced one.
auto recover_rigid_optimum(const RigidReduction & reduction, const SolveResult & reduced) -> SolveResult;

auto core_report_to_json(const CoreReport & report) -> Json;

} // namespace vcsp
