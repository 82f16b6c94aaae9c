#pragma once

#include <vcsp/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vcsp {

using Tuple = std::vector<int>;

/// Sorted, duplicate-free list of tuples of one arity.
using Relation = std::vector<Tuple>;

/// n^k, throwing StructuralError on overflow past 2^62.
auto power(std::uint64_t n, std::uint64_t k) -> std::uint64_t;

/// Position of `t` in the lexicographic order of D^|t|, leftmost coordinate
/// most significant.
auto lex_index(const Tuple & t, int n) -> std::size_t;
auto lex_tuple(std::size_t index, int n, int arity) -> Tuple;

/// Advances `t` to its lexicographic successor; false after the last tuple.
auto next_tuple(Tuple & t, int n) -> bool;

/// A k-ary operation on {0..n-1} stored as its table in lexicographic order.
struct Operation
{
    int domain_size = 1;
    int arity = 1;
    std::vector<int> table;

    Operation() = default;
    Operation(int domain_size, int arity, std::vector<int> table);

    static auto projection(int domain_size, int arity, int coordinate) -> Operation;

    auto operator()(const Tuple & args) const -> int { return table[lex_index(args, domain_size)]; }

    auto validate() const -> void;

    friend auto operator==(const Operation &, const Operation &) -> bool = default;
    friend auto operator<=>(const Operation & a, const Operation & b)
    {
        if (auto c = a.domain_size <=> b.domain_size; c != 0)
            return c;
        if (auto c = a.arity <=> b.arity; c != 0)
            return c;
        return a.table <=> b.table;
    }
};

/// The composition f[g_1..g_k] where f is k-ary and every g_i is l-ary.
auto superposition(const Operation & f, const std::vector<Operation> & g) -> Operation;

struct CostFunction
{
    std::string name;
    int domain_size = 1;
    int arity = 1;
    std::vector<ExtendedRational> table;

    CostFunction() = default;
    CostFunction(std::string name, int domain_size, int arity, std::vector<ExtendedRational> table);

    auto operator()(const Tuple & args) const -> const ExtendedRational & { return table[lex_index(args, domain_size)]; }

    auto validate() const -> void;

    friend auto operator==(const CostFunction &, const CostFunction &) -> bool = default;
};

/// Tuples with finite cost.
auto feas(const CostFunction & rho) -> Relation;

/// N_d: 0 at d, INF elsewhere.
auto constant_indicator(int domain_size, int d) -> CostFunction;

/// Crisp equality relation on D^2.
auto equality_function(int domain_size) -> CostFunction;

enum class LanguageKind
{
    Crisp,
    FiniteValued,
    GeneralValued
};

auto to_string(LanguageKind kind) -> std::string;

struct Language
{
    int domain_size = 1;
    std::vector<CostFunction> functions;

    Language() = default;
    Language(int domain_size, std::vector<CostFunction> functions);

    /// Throws StructuralError for domain mismatches, bad tables or repeated
    /// names.
    auto validate() const -> void;

    auto find(const std::string & name) const -> const CostFunction *;
    auto at(const std::string & name) const -> const CostFunction &;

    friend auto operator==(const Language &, const Language &) -> bool = default;
};

auto classify_kind(const Language & language) -> LanguageKind;

/// Operation compatible with Feas of every function of the language.
auto is_polymorphism(const Operation & f, const Language & language) -> bool;

} // namespace vcsp
