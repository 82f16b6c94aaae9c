#pragma once

#include <vcsp/budget.hpp>
#include <vcsp/language.hpp>
#include <vcsp/language_io.hpp>

#include <vector>

namespace vcsp {

/// Duplicate-free operations of one arity, sorted by table.
struct OperationSet
{
    int domain_size = 1;
    int arity = 1;
    std::vector<Operation> operations;

    OperationSet() = default;
    OperationSet(int domain_size, int arity, std::vector<Operation> operations = {});

    auto insert(const Operation & op) -> bool;
    auto contains(const Operation & op) const -> bool;
    auto index_of(const Operation & op) const -> std::size_t;
    auto size() const -> std::size_t { return operations.size(); }

    friend auto operator==(const OperationSet &, const OperationSet &) -> bool = default;
};

auto projections(int domain_size, int arity) -> OperationSet;

/// Extra restrictions on the enumerated tables.
struct EnumerationFilter
{
    bool idempotent = false;
    bool conservative = false;
};

/// Pol_m of the language, by backtracking over table cells in lexicographic
/// order with each compatibility check run as soon as its cells are fixed.
auto enumerate_polymorphisms(const Language & language, int arity, const Budget & budget = {},
    EnumerationFilter filter = {}) -> OperationSet;

auto is_projection(const Operation & f) -> bool;
/// Index of the projected coordinate, or -1.
auto projection_coordinate(const Operation & f) -> int;
auto is_idempotent(const Operation & f) -> bool;
auto is_cyclic(const Operation & f) -> bool;
auto is_majority(const Operation & f) -> bool;
auto is_minority(const Operation & f) -> bool;
auto is_conservative(const Operation & f) -> bool;
auto is_bijective(const Operation & f) -> bool;

/// Least clone (restricted to arities 1..max_arity) containing the
/// generators.  Generators of larger arity still take part as outer
/// operations.  Entry i of the result holds arity i + 1.
auto close_under_superposition(const std::vector<Operation> & generators, int domain_size, int max_arity,
    const Budget & budget = {}) -> std::vector<OperationSet>;

auto operation_set_to_json(const OperationSet & set) -> Json;
auto operation_set_from_json(const Json & value, const std::string & where = "") -> OperationSet;

} // namespace vcsp
