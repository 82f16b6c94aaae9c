#pragma once

#include <stdexcept>
#include <string>

namespace vcsp {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong sizes, indices out of range, inconsistent domains.
class StructuralError : public Error
{
public:
    using Error::Error;
};

/// Text or file input that does not follow the declared format.  `where`
/// names the offending field (JSON path or value position).
class ParseError : public Error
{
public:
    ParseError(std::string where, const std::string & what) :
        Error(where.empty() ? what : where + ": " + what), _where(std::move(where)), _message(what)
    {
    }

    auto where() const -> const std::string & { return _where; }
    auto message() const -> const std::string & { return _message; }

private:
    std::string _where;
    std::string _message;
};

/// A desk-scale search or enumeration would exceed its configured cap.
class BudgetExceeded : public Error
{
public:
    using Error::Error;
};

class CoreRequired : public Error
{
public:
    using Error::Error;
};

class NotAPolymorphism : public Error
{
public:
    using Error::Error;
};

class InvalidWeighting : public Error
{
public:
    using Error::Error;
};

class IncompatibleCongruence : public Error
{
public:
    using Error::Error;
};

class IncompatibleRelation : public Error
{
public:
    using Error::Error;
};

class NotASubuniverse : public Error
{
public:
    using Error::Error;
};

class ConservativityRequired : public Error
{
public:
    using Error::Error;
};

class CertificateRequired : public Error
{
public:
    using Error::Error;
};

class DomainSizeError : public Error
{
public:
    using Error::Error;
};

/// A result that theory says cannot happen (e.g. an exact solution that fails
/// re-verification).  Always a bug.
class InternalError : public Error
{
public:
    using Error::Error;
};

} // namespace vcsp
