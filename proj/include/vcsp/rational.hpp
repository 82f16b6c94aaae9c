#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace vcsp {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0) into a canonical rational.
auto parse_rational(std::string_view text) -> Rational;

/// "p" for integers, "p/q" otherwise.
auto format_rational(const Rational & value) -> std::string;

/// A rational number or positive infinity.  Fractions are always kept in
/// lowest terms with a positive denominator.
class ExtendedRational
{
public:
    ExtendedRational() = default;
    ExtendedRational(const Rational & value);
    ExtendedRational(long value);

    static auto infinity() -> ExtendedRational;

    auto is_infinite() const -> bool { return _infinite; }
    auto is_finite() const -> bool { return ! _infinite; }

    /// The finite value; throws StructuralError on infinity.
    auto value() const -> const Rational &;

    /// Multiplication by c >= 0 as used for scaling cost functions: INF stays
    /// INF for c > 0 and 0 * INF is 0.
    auto scaled(const Rational & c) const -> ExtendedRational;

    /// Multiplication by c >= 0 with 0 * INF = INF.
    auto scaled_keeping_infinity(const Rational & c) const -> ExtendedRational;

    auto operator+=(const ExtendedRational & other) -> ExtendedRational &;
    friend auto operator+(ExtendedRational lhs, const ExtendedRational & rhs) -> ExtendedRational
    {
        lhs += rhs;
        return lhs;
    }

    friend auto operator==(const ExtendedRational & a, const ExtendedRational & b) -> bool;
    friend auto operator<=>(const ExtendedRational & a, const ExtendedRational & b) -> std::strong_ordering;

    /// "inf", "p" or "p/q".
    auto to_string() const -> std::string;
    static auto parse(std::string_view text) -> ExtendedRational;

private:
    Rational _value{0};
    bool _infinite = false;
};

auto operator<<(std::ostream & os, const ExtendedRational & value) -> std::ostream &;

inline const ExtendedRational INF = ExtendedRational::infinity();

} // namespace vcsp
