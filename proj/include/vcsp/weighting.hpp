#pragma once

#include <vcsp/budget.hpp>
#include <vcsp/instance.hpp>
#include <vcsp/language.hpp>
#include <vcsp/polymorphism.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace vcsp {

/// Non-zero weights on k-ary operations, sorted by operation.  Operations
/// not listed have weight 0.
struct Weighting
{
    int domain_size = 1;
    int arity = 1;
    std::vector<std::pair<Operation, Rational>> entries;

    /// Drops zeros, merges repeats and checks validity (total 0, negative
    /// only on projections); throws InvalidWeighting.
    static auto make(int domain_size, int arity, std::vector<std::pair<Operation, Rational>> entries) -> Weighting;
    static auto zero(int domain_size, int arity) -> Weighting;

    auto weight(const Operation & op) const -> Rational;
    auto support() const -> std::vector<Operation>;
    auto is_zero() const -> bool { return entries.empty(); }

    friend auto operator==(const Weighting &, const Weighting &) -> bool = default;
};

/// (1/k)(f_1 + ... + f_k - pi_1 - ... - pi_k).
auto multimorphism_weighting(const std::vector<Operation> & ops) -> Weighting;

/// Scales so that the most negative weight is -1.
auto normalized(const Weighting & w) -> Weighting;

struct ImprovementCheck
{
    bool holds = true;
    /// First violating (function, tuple list) in lexicographic order.
    std::string function;
    std::vector<Tuple> tuples;
    ExtendedRational value;
};

/// Checks  sum_f w(f) rho(f(x_1..x_k)) <= 0  for every rho and every list
/// x_1..x_k from Feas(rho).  A positively weighted operation that maps into
/// an infinite cost fails the check.  Unless `require_polymorphisms` is
/// false, throws NotAPolymorphism if a weighted operation is not a
/// polymorphism.
auto is_weighted_polymorphism(const Weighting & w, const Language & language, bool require_polymorphisms = true)
    -> ImprovementCheck;

struct Superposition
{
    bool proper = true;
    /// Raw superposed weights (summing to zero), sorted by operation.
    std::vector<std::pair<Operation, Rational>> weights;
    /// Non-projection left with negative weight when improper.
    std::optional<Operation> offending;

    /// The weighting; throws InvalidWeighting when improper.
    auto weighting() const -> Weighting;
};

auto superpose(const Weighting & w, const std::vector<Operation> & g) -> Superposition;

struct Membership
{
    bool member = false;
    /// Weighted polymorphism giving the operation positive weight; absent
    /// for projections and non-members.
    std::optional<Weighting> witness;
};

/// Decides by exact LP whether some weighted polymorphism gives `f` positive
/// weight.  `pol` may supply a precomputed Pol_m.
auto pol_plus_membership(const Language & language, const Operation & f, const Budget & budget = {},
    const OperationSet * pol = nullptr) -> Membership;

struct PositiveClone
{
    OperationSet pol;
    OperationSet plus;
    /// Weighted polymorphisms whose supports cover every non-projection
    /// member of `plus`.
    std::vector<Weighting> witnesses;
};

auto positive_clone_report(const Language & language, int arity, const Budget & budget = {},
    EnumerationFilter filter = {}) -> PositiveClone;
auto positive_clone(const Language & language, int arity, const Budget & budget = {}) -> OperationSet;

/// Weighted polymorphism supported on idempotent cyclic operations, if one
/// exists (arity >= 2).
auto find_cyclic_wpol(const Language & language, int arity, const Budget & budget = {}) -> std::optional<Weighting>;

/// True iff every unary member of the positive clone is a bijection.
auto unary_positive_clone_is_bijective(const Language & language, const Budget & budget = {}) -> bool;

struct Indicator
{
    /// Variables are the tuples of D^m in lexicographic order.
    Instance instance;
    Rational P;
    OperationSet pol;
    OperationSet plus;
    /// Weight of each (function, tuple list) summand.
    std::vector<Rational> z;

    /// Value of the indicator at the operation table `f`.
    auto value(const Operation & f) const -> ExtendedRational;
};

/// The weighted sum of Γ functions that is finite exactly on Pol_m and
/// minimal (= P) exactly on Pol⁺_m.  Summands with weight 0 keep their
/// infinite entries.  Throws CoreRequired if Γ is not a core.
auto build_indicator(const Language & language, int arity, const Budget & budget = {}) -> Indicator;

struct RelationIndicator
{
    CostFunction function;
    Rational P;
};

/// A cost function equal to P exactly on R and larger elsewhere, expressed
/// from the |R|-ary indicator.  Throws IncompatibleRelation if R is not
/// preserved by Pol⁺_{|R|}.
auto relation_indicator(const Language & language, const Relation & relation, const Budget & budget = {})
    -> RelationIndicator;

auto weighting_to_json(const Weighting & w) -> Json;
auto weighting_from_json(const Json & value, int domain_size, const std::string & where = "") -> Weighting;

} // namespace vcsp
