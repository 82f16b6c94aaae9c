#pragma once

#include <vcsp/instance.hpp>
#include <vcsp/language.hpp>

#include <vector>

namespace vcsp {

/// Partition of {0..n-1}; classes are sorted internally and ordered by their
/// least element.
struct Congruence
{
    int domain_size = 1;
    std::vector<std::vector<int>> classes;

    static auto make(int domain_size, std::vector<std::vector<int>> classes) -> Congruence;
    static auto identity(int domain_size) -> Congruence;

    /// Index of the class containing d.
    auto class_of(int d) const -> int;
    /// Throws IncompatibleCongruence naming the first operation that does not
    /// preserve the partition.
    auto check_compatible(const std::vector<Operation> & operations) const -> void;

    friend auto operator==(const Congruence &, const Congruence &) -> bool = default;
};

auto congruence_to_json(const Congruence & c) -> Json;
auto congruence_from_json(const Json & value, int domain_size, const std::string & where = "") -> Congruence;

/// Integer a with a^exponent = size; throws StructuralError otherwise.
auto integer_root(int size, int exponent) -> int;

/// Element of A^exponent packed lexicographically, first coordinate most
/// significant.
auto pack(const Tuple & coordinates, int base) -> int;
auto unpack(int element, int base, int exponent) -> Tuple;

/// Each r-ary function over B = A^exponent becomes an (exponent*r)-ary
/// function over A reading the arguments block by block.
auto power_lift(const Language & language, int exponent) -> Language;
auto power_lift(const CostFunction & f, int exponent) -> CostFunction;

/// Every variable v becomes v.1 .. v.exponent.
auto power_lift_instance(const Instance & instance, int exponent) -> Instance;
/// Packs an assignment of the lifted instance back into B.
auto power_pack_assignment(const Assignment & lifted, int base, int exponent) -> Assignment;

/// rho'(x) = rho([x_1], ..., [x_r]) for functions over the classes.
auto quotient_lift(const Language & language, const Congruence & congruence,
    const std::vector<Operation> & operations = {}) -> Language;
auto quotient_lift_instance(const Instance & instance, const Congruence & congruence) -> Instance;
auto quotient_assignment(const Assignment & lifted, const Congruence & congruence) -> Assignment;

/// Throws NotASubuniverse if some operation leaves S.
auto check_subuniverse(const std::vector<int> & subset, const std::vector<Operation> & operations) -> void;

/// Tables restricted to S (renumbered in increasing order).
auto subalgebra_restrict(const Language & language, const std::vector<int> & subset,
    const std::vector<Operation> & operations = {}) -> Language;

/// The inverse direction: functions over S read as functions over D that
/// are infinite outside S.
auto subalgebra_extend(const Language & language, const std::vector<int> & subset, int domain_size) -> Language;
auto subalgebra_extend_instance(const Instance & instance, const std::vector<int> & subset, int domain_size) -> Instance;

} // namespace vcsp
