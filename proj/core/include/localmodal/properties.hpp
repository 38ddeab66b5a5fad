#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/local_property.hpp"
#include "localmodal/model.hpp"
#include "localmodal/schema.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace localmodal
{

/// Standard first-order satisfaction with quantifiers ranging over the
/// frame's worlds and the free variable bound to `w`. Equality is world
/// identity. Throws LookupError if the property mentions an undeclared agent.
[[nodiscard]] bool eval_property( const LocalProperty& p, const Frame& f, WorldIndex w );

/// Worlds of `f` at which `p` holds.
[[nodiscard]] WorldSet property_extension( const LocalProperty& p, const Frame& f );

/// How harmonization repairs an unravelled model for a property.
enum class CompletionRule
{
    none,
    transitive, // w->x->y adds w->y
    reflexive,  // adds w->w
    euclidean,  // w->x, w->y adds x->y
    symmetric,  // w->x adds x->w
    superset,   // w -b-> x adds w -a-> x
    dense,      // w->x adds y->x for a witnessing child y of w
    functional  // non-theta worlds with one successor get a copied sibling
};

[[nodiscard]] std::string_view to_string( CompletionRule r );

/// A theta label bound to its first-order definition and its axioms.
struct PropertySpec
{
    std::string label;
    LocalProperty definition;
    /// Schema locally defining `definition`; absent for user-defined
    /// properties loaded from files.
    std::optional< Schema > defining_schema;
    /// theta_label -> defining schema.
    std::optional< Schema > elimination_schema;
    /// Theta-free formula whose truth trivially makes the property hold.
    std::optional< Formula > trivial_guard;
    /// Number of steps from a world the property inspects.
    std::size_t lookahead = 0;
    CompletionRule completion = CompletionRule::none;
    /// Agents the property is about; the principal agent comes first, and
    /// for superset properties the second entry is the agent whose relation
    /// must be contained in the first's.
    std::vector< AgentId > agents;

    [[nodiscard]] Formula theta() const { return Formula::theta( label ); }
};

/// Built-in property families: tr, ref, euc, sym, dense, func (optionally
/// suffixed `_AGENT`, default agent `default_agent`) and sup_A_B, local
/// containment of R(B) in R(A). Throws LookupError for an unknown label.
[[nodiscard]] PropertySpec builtin( std::string_view label, const AgentId& default_agent = "a" );

/// Property families: "tr", "ref", "euc", "sym", "sup", "dense", "func".
[[nodiscard]] const std::vector< std::string >& builtin_families();

/// The seven built-ins over agents `a` (and `b` for the superset case).
[[nodiscard]] std::vector< PropertySpec > builtin_catalogue( const AgentId& a = "a", const AgentId& b = "b" );

/// A spec with only a definition, for harmony checks of user properties.
[[nodiscard]] PropertySpec custom_property( std::string label, LocalProperty definition );

/// Checks whether (f + V), w |= s for all tested valuations V of the
/// placeholders exactly when p holds at w. Exhaustive when
/// 2^(|W| * arity) <= budget, otherwise `budget` valuations are sampled
/// using `seed`. Throws ArgumentError for a zero budget.
[[nodiscard]] bool locally_defines_check( const Schema& s, const LocalProperty& p, const Frame& f, WorldIndex w,
                                          std::uint64_t budget, std::uint64_t seed = 0 );

/// Worlds of `f` at which `s` is frame-valid over the tested valuations.
[[nodiscard]] WorldSet frame_validity( const Schema& s, const Frame& f, std::uint64_t budget, std::uint64_t seed = 0 );

} // namespace localmodal
