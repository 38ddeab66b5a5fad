#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace localmodal
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed formula, property, or proof text. Positions are 1-based.
class ParseError : public Error
{
public:
    ParseError( const std::string& message, std::size_t line, std::size_t column )
        : Error( std::to_string( line ) + ":" + std::to_string( column ) + ": " + message ),
          _line{ line }, _column{ column }, _message{ message }
    {}

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
    [[nodiscard]] const std::string& message() const { return _message; }

private:
    std::size_t _line;
    std::size_t _column;
    std::string _message;
};

/// A document or value violates a structural invariant. `path` locates the
/// offending element (e.g. `relations.a[2]`), empty when not applicable.
class ValidationError : public Error
{
public:
    ValidationError( const std::string& path, const std::string& message )
        : Error( path.empty() ? message : path + ": " + message ), _path{ path }
    {}

    [[nodiscard]] const std::string& path() const { return _path; }

private:
    std::string _path;
};

/// Evaluation referenced a world, agent, or theta label the model lacks.
class LookupError : public Error
{
public:
    using Error::Error;
};

/// Arguments outside an operation's domain (arity mismatch, depth too
/// small, zero budget, ...).
class ArgumentError : public Error
{
public:
    using Error::Error;
};

/// Harmonization input fails niceness or an interaction precondition.
/// `worlds` lists the offending world ids.
class PreconditionError : public Error
{
public:
    PreconditionError( const std::string& message, std::vector< std::string > worlds )
        : Error( message + describe( worlds ) ), _worlds{ std::move( worlds ) }
    {}

    [[nodiscard]] const std::vector< std::string >& worlds() const { return _worlds; }

private:
    static std::string describe( const std::vector< std::string >& worlds )
    {
        std::string out;
        for ( const auto& w : worlds )
            out += ( out.empty() ? ": " : ", " ) + w;
        return out;
    }

    std::vector< std::string > _worlds;
};

/// An enumeration or search would exceed the caller's cap.
class CapExceeded : public Error
{
public:
    CapExceeded( double estimated, double cap )
        : Error( "enumeration of ~" + std::to_string( estimated ) + " models exceeds cap "
                 + std::to_string( cap ) ),
          _estimated{ estimated }
    {}

    [[nodiscard]] double estimated() const { return _estimated; }

private:
    double _estimated;
};

} // namespace localmodal
