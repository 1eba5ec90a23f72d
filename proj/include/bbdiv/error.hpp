#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bbdiv
{

// Malformed textual input (.aut, relation files, formulas).
class parse_error : public std::runtime_error
{
    std::size_t _line;

public:
    parse_error( std::size_t line, const std::string& what )
            : std::runtime_error( line == 0 ? what : "line " + std::to_string( line ) + ": " + what ),
              _line{ line }
    {}

    [[nodiscard]] std::size_t line() const { return _line; }
};

// Malformed formula text; position is a 0-based character offset.
class syntax_error : public parse_error
{
    std::size_t _position;

public:
    syntax_error( std::size_t position, const std::string& what )
            : parse_error( 0, "position " + std::to_string( position ) + ": " + what ), _position{ position }
    {}

    [[nodiscard]] std::size_t position() const { return _position; }
};

// An exhaustive divergence enumeration was requested on a system larger
// than the configured lasso bound.
class bound_exceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An operation was called outside its documented precondition.
class precondition_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// Two decision procedures that must coincide disagreed.
class internal_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace bbdiv
