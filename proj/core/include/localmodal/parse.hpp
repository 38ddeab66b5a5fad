#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/local_property.hpp"

#include <string_view>
#include <vector>

namespace localmodal
{

/// Agent context for parsing.
///
/// Boxes written without an agent (`[]`, `<>`) and relations written without
/// a subscript (`R(x,y)`) resolve to the sole declared agent. With no
/// declared agents any agent token is accepted and the unsubscripted forms
/// resolve to `default_agent`. With two or more declared agents the
/// unsubscripted forms are an error, and so are undeclared agent tokens.
struct ParseOptions
{
    std::vector< AgentId > agents;
    AgentId default_agent = "a";
};

/// Modal formula grammar:
///
///     formula  ::= imp [ "<->" formula ]
///     imp      ::= disj [ "->" imp ]
///     disj     ::= conj { "|" conj }
///     conj     ::= unary { "&" unary }
///     unary    ::= "~" unary | "[" [agent] "]" unary | "<" [agent] ">" unary | primary
///     primary  ::= "T" | "F" | "theta_" label | atom | "(" formula ")"
///
/// `#` starts a comment running to the end of the line. Throws ParseError.
[[nodiscard]] Formula parse_formula( std::string_view text, const ParseOptions& options = {} );

/// First-order local property grammar:
///
///     fo       ::= disj [ "->" fo ]
///     disj     ::= conj { "|" conj }
///     conj     ::= unary { "&" unary }
///     unary    ::= "~" unary | ("forall" | "exists") var { "," var } fo | primary
///     primary  ::= "R" [ "_" agent ] "(" var "," var ")" | var "=" var | "(" fo ")"
///
/// Quantifier bodies extend as far right as possible. The result must have
/// exactly one free variable; otherwise ParseError is thrown.
[[nodiscard]] LocalProperty parse_property( std::string_view text, const ParseOptions& options = {} );

/// As parse_property but without the free-variable restriction.
[[nodiscard]] FoFormula parse_fo_formula( std::string_view text, const ParseOptions& options = {} );

} // namespace localmodal
