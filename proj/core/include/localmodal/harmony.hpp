#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/model.hpp"
#include "localmodal/properties.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace localmodal
{

struct HarmonyCheck
{
    bool holds = true;
    /// Property holds but the world is outside Delta.
    std::vector< WorldIndex > missing;
    /// World is in Delta but the property fails.
    std::vector< WorldIndex > spurious;
};

struct NicenessCheck
{
    bool holds = true;
    /// Worlds in Delta at which the property fails.
    std::vector< WorldIndex > property_failures;
    /// Worlds satisfying the trivial guard that are outside Delta.
    std::vector< WorldIndex > guard_failures;
};

/// Delta(label) equals the extension of the definition. Throws LookupError
/// when the model has no extension for the label.
[[nodiscard]] HarmonyCheck is_harmonious( const KripkeModel& m, const PropertySpec& spec );

[[nodiscard]] NicenessCheck is_nice( const KripkeModel& m, const PropertySpec& spec );

/// For every pair (euc_X, ref_X) on the same agent among `specs`: worlds in
/// Delta(euc) having a successor outside Delta(ref). Those successors are
/// returned.
[[nodiscard]] std::vector< WorldIndex > interaction_violations( const KripkeModel& m,
                                                                const std::vector< PropertySpec >& specs );

/// Tree unravelling of a pointed model up to a depth bound.
///
/// World ids are paths of original ids joined by '/'; in models with more
/// than one agent each step is written `agent:world`. With a tail, a copy of
/// the source model (ids `tail:w`) is appended and every depth-d path gets
/// edges to the tail copies of its original's successors, which makes the
/// result bisimilar to the source.
struct UnravelledModel
{
    KripkeModel base;
    /// Original world of every world of `base`.
    std::vector< WorldIndex > originals;
    /// Tree depth; empty for tail worlds.
    std::vector< std::optional< std::size_t > > tree_depth;
    std::size_t depth = 0;
    WorldIndex root = 0;
};

/// Throws ArgumentError if the result would exceed `max_worlds`.
[[nodiscard]] UnravelledModel unravel( const PointedModel& m, std::size_t d, bool attach_tail = false,
                                       std::size_t max_worlds = 1'000'000 );

struct HarmonizeOptions
{
    /// Reject inputs where Delta(euc) has successors outside Delta(ref).
    bool check_interaction = true;
    std::size_t max_worlds = 1'000'000;
};

struct HarmonizationReport
{
    KripkeModel result;
    WorldIndex root = 0;
    std::size_t depth = 0;
    /// Depth minus the largest lookahead among the specs.
    std::size_t interior_radius = 0;
    /// Completion passes, including the final pass that changed nothing.
    std::size_t iterations = 0;
    std::size_t edges_added = 0;
    std::size_t worlds_copied = 0;
    std::vector< WorldIndex > originals;
    std::vector< std::optional< std::size_t > > tree_depth;
};

/// Unravels to depth `d` (with a tail), duplicates subtrees where
/// functionality or the euc/ref pair needs a second successor, then runs the
/// completion rules of all specs round-robin at the tree worlds until nothing
/// changes. Tail worlds keep their edges.
///
/// Throws ArgumentError when d is below the largest lookahead plus one or a
/// spec has no completion rule, PreconditionError when the input is not nice
/// or violates the euc/ref interaction precondition, and LookupError when a
/// label has no extension.
[[nodiscard]] HarmonizationReport harmonize( const PointedModel& m, const std::vector< PropertySpec >& specs,
                                             std::size_t d, const HarmonizeOptions& options = {} );

struct Verification
{
    /// Each entry starts with the guarantee it concerns (G1, G2, G3).
    std::vector< std::string > failures;
    std::size_t edges_checked = 0;
    std::size_t worlds_checked = 0;
    std::size_t formulas_checked = 0;

    [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Re-checks projection of every edge and inheritance of Delta and V (G1),
/// harmony at every tree world within each spec's radius (G2), and agreement
/// of every battery formula with modal depth up to the interior radius plus
/// bounded bisimilarity of the roots (G3).
[[nodiscard]] Verification verify_report( const PointedModel& m, const HarmonizationReport& r,
                                          const std::vector< PropertySpec >& specs,
                                          const std::vector< Formula >& battery );

/// Theta-free formulas over the model's agents and first atom (or `p`) with
/// modal depth at most `max_depth`.
[[nodiscard]] std::vector< Formula > standard_battery( const KripkeModel& m, std::size_t max_depth );

/// A model bisimilar to `m` (ignoring theta) whose root falsifies the
/// property whenever it holds at the point and the guard fails there: the
/// lookahead-depth unravelling with a tail, plus a copied successor subtree
/// for functionality.
[[nodiscard]] UnravelledModel anti_preservation_witness( const PointedModel& m, const PropertySpec& spec );

/// Sidecar metadata for a harmonized model, as a JSON document.
[[nodiscard]] std::string report_metadata( const KripkeModel& source, const HarmonizationReport& r );

} // namespace localmodal
