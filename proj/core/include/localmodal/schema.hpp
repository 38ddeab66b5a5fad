#pragma once

#include "localmodal/formula.hpp"

#include <map>
#include <span>
#include <string>

namespace localmodal
{

/// Modal schema whose placeholders are the atoms `p1` ... `pk`.
///
/// Any other atom in the body is an ordinary atom and is left untouched by
/// instantiation. The placeholders must be contiguous from `p1`.
class Schema
{
public:
    explicit Schema( Formula body );

    [[nodiscard]] const Formula& body() const { return _body; }
    [[nodiscard]] std::size_t arity() const { return _arity; }

    [[nodiscard]] static bool is_placeholder( const std::string& atom );
    [[nodiscard]] static std::string placeholder( std::size_t index ); // 1-based

private:
    Formula _body;
    std::size_t _arity;
};

/// Simultaneous substitution of atoms. Unchanged subtrees are shared with
/// the input.
[[nodiscard]] Formula substitute( const Formula& f, const std::map< std::string, Formula >& replacement );

/// Replaces every placeholder `p_i` by `args[i-1]`. Throws ArgumentError on
/// an arity mismatch.
[[nodiscard]] Formula instantiate( const Schema& s, std::span< const Formula > args );

} // namespace localmodal
