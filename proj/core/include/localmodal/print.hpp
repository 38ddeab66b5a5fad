#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/local_property.hpp"

#include <string>

namespace localmodal
{

/// Renders a formula in the grammar accepted by parse_formula, restoring
/// sugar (`F`, `&`, `->`, `<->`, `<a>`) wherever the stored shape matches.
/// parse_formula(print_formula(f)) == f for every f.
[[nodiscard]] std::string print_formula( const Formula& f );

[[nodiscard]] std::string print_fo_formula( const FoFormula& f );
[[nodiscard]] std::string print_property( const LocalProperty& p );

} // namespace localmodal
