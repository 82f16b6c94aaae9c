#include <vcsp/errors.hpp>
#include <vcsp/rational.hpp>

#include <cctype>

namespace vcsp {

namespace
{
    auto all_digits(std::string_view s) -> bool
    {
        if (s.empty())
            return false;
        for (char c : s)
            if (! std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    }
}

auto parse_rational(std::string_view text) -> Rational
{
    auto body = text;
    if (! body.empty() && body.front() == '-')
        body.remove_prefix(1);

    auto slash = body.find('/');
    auto numerator = body.substr(0, slash);
    if (! all_digits(numerator))
        throw ParseError("", "bad rational '" + std::string(text) + "'");
    if (slash != std::string_view::npos) {
        auto denominator = body.substr(slash + 1);
        if (! all_digits(denominator))
            throw ParseError("", "bad rational '" + std::string(text) + "'");
        if (denominator.find_first_not_of('0') == std::string_view::npos)
            throw ParseError("", "zero denominator in '" + std::string(text) + "'");
    }

    Rational result;
    if (result.set_str(std::string(text), 10) != 0)
        throw ParseError("", "bad rational '" + std::string(text) + "'");
    result.canonicalize();
    return result;
}

auto format_rational(const Rational & value) -> std::string
{
    return value.get_str(10);
}

ExtendedRational::ExtendedRational(const Rational & value) :
    _value(value)
{
    _value.canonicalize();
}

ExtendedRational::ExtendedRational(long value) :
    _value(value)
{
}

auto ExtendedRational::infinity() -> ExtendedRational
{
    ExtendedRational result;
    result._infinite = true;
    return result;
}

auto ExtendedRational::value() const -> const Rational &
{
    if (_infinite)
        throw StructuralError("value() called on infinity");
    return _value;
}

auto ExtendedRational::scaled(const Rational & c) const -> ExtendedRational
{
    if (sgn(c) < 0)
        throw StructuralError("negative scaling factor " + format_rational(c));
    if (sgn(c) == 0)
        return ExtendedRational{};
    if (_infinite)
        return infinity();
    return ExtendedRational{Rational(_value * c)};
}

auto ExtendedRational::scaled_keeping_infinity(const Rational & c) const -> ExtendedRational
{
    if (_infinite) {
        if (sgn(c) < 0)
            throw StructuralError("negative scaling factor " + format_rational(c));
        return infinity();
    }
    return scaled(c);
}

auto ExtendedRational::operator+=(const ExtendedRational & other) -> ExtendedRational &
{
    if (_infinite)
        return *this;
    if (other._infinite) {
        _infinite = true;
        _value = 0;
        return *this;
    }
    _value += other._value;
    return *this;
}

auto operator==(const ExtendedRational & a, const ExtendedRational & b) -> bool
{
    if (a._infinite || b._infinite)
        return a._infinite == b._infinite;
    return a._value == b._value;
}

auto operator<=>(const ExtendedRational & a, const ExtendedRational & b) -> std::strong_ordering
{
    if (a._infinite || b._infinite)
        return a._infinite <=> b._infinite;
    int c = cmp(a._value, b._value);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

auto ExtendedRational::to_string() const -> std::string
{
    return _infinite ? std::string("inf") : format_rational(_value);
}

auto ExtendedRational::parse(std::string_view text) -> ExtendedRational
{
    if (text == "inf")
        return infinity();
    return ExtendedRational{parse_rational(text)};
}

auto operator<<(std::ostream & os, const ExtendedRational & value) -> std::ostream &
{
    return os << value.to_string();
}

} // namespace vcsp
