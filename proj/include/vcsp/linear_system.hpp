#pragma once

#include <vcsp/rational.hpp>

#include <cstddef>
#include <variant>
#include <vector>

namespace vcsp {

enum class RowKind
{
    Geq,
    Eq
};

/// One row  sum_i a_i z_i  (>= | =)  b + C.
struct LinearRow
{
    std::vector<Rational> coefficients;
    Rational rhs;
    RowKind kind = RowKind::Geq;
};

/// A mixed system over non-negative variables z_0..z_{n-1}, optionally
/// shifted by one shared free constant C on every right-hand side.  Without
/// the free constant the rows read  sum_i a_i z_i (>= | =) b.
struct LinearSystem
{
    std::size_t num_vars = 0;
    std::vector<LinearRow> rows;
    bool has_free_constant = true;

    /// Throws StructuralError if some row has the wrong width.
    auto validate() const -> void;
};

struct FarkasSolution
{
    std::vector<Rational> values;
    Rational constant{0};
};

/// Multipliers y_j, one per row, proving that no solution exists:
///   sum_j y_j = 0 (only with a free constant), y_j >= 0 on GEQ rows,
///   sum_j y_j a_ij <= 0 for every variable i, and sum_j y_j b_j > 0.
struct FarkasCertificate
{
    std::vector<Rational> multipliers;
};

using FarkasResult = std::variant<FarkasSolution, FarkasCertificate>;

/// Exact phase-one simplex with Bland's rule.  Exactly one alternative is
/// returned and it always re-verifies by substitution.
auto solve_farkas(const LinearSystem & system) -> FarkasResult;

auto satisfies(const LinearSystem & system, const FarkasSolution & solution) -> bool;
auto certifies(const LinearSystem & system, const FarkasCertificate & certificate) -> bool;

/// Homogeneous alternative: either z >= 0, z != 0 with every row sum zero, or
/// a vector y with  sum_j y_j a_ij > 0  for every variable i.
struct GordanSolution
{
    std::vector<Rational> values;
};

struct GordanSeparator
{
    std::vector<Rational> multipliers;
};

using GordanResult = std::variant<GordanSolution, GordanSeparator>;

/// `system` must contain only EQ rows with zero right-hand side; the free
/// constant flag is ignored.
auto solve_gordan(const LinearSystem & system) -> GordanResult;

auto satisfies(const LinearSystem & system, const GordanSolution & solution) -> bool;
auto certifies(const LinearSystem & system, const GordanSeparator & separator) -> bool;

} // namespace vcsp
