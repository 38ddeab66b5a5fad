#pragma once

#include "localmodal/formula.hpp"
#include "localmodal/parse.hpp"
#include "localmodal/properties.hpp"
#include "localmodal/schema.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace localmodal
{

struct PseudoStep
{
    AgentId agent;
    Formula guard;
};

/// [s]f abbreviates guard_1 -> [a_1](guard_2 -> [a_2](... -> [a_n]f)).
using PseudoModality = std::vector< PseudoStep >;

[[nodiscard]] Formula expand_pseudo( const PseudoModality& s, Formula f );

/// theta_source -> [agent] theta_target.
struct InteractionAxiom
{
    std::string source;
    AgentId agent;
    std::string target;

    friend bool operator==( const InteractionAxiom&, const InteractionAxiom& ) = default;
};

/// K plus elimination and trivial introduction axioms for the enabled
/// properties, interaction axioms, and optionally the introduction rule.
struct ProofSystem
{
    std::vector< PropertySpec > specs;
    std::vector< InteractionAxiom > interactions;
    bool rule_mode = false;

    [[nodiscard]] const PropertySpec* find( const std::string& label ) const;
};

/// A system over built-in labels. When both euc_X and ref_X are enabled on
/// the same agent the interaction axiom theta_euc -> [agent]theta_ref is
/// added. Throws LookupError for an unknown label.
[[nodiscard]] ProofSystem make_system( const std::vector< std::string >& labels, bool rule_mode = false,
                                       const AgentId& default_agent = "a" );

/// Throws ArgumentError when an interaction axiom mentions a disabled label.
void validate_system( const ProofSystem& sys );

enum class Rule
{
    taut,
    axiom_k,
    nec,
    mp,
    elim,
    triv_intro,
    interact,
    intro
};

[[nodiscard]] std::string_view to_string( Rule r );
/// Case-insensitive; accepts taut, k/axk, nec, mp, elim, trivintro,
/// interact, intro/introrule. Throws LookupError otherwise.
[[nodiscard]] Rule parse_rule( std::string_view name );

struct ProofLine
{
    Formula formula;
    Rule rule = Rule::taut;
    /// 1-based references to earlier lines. Nec and Intro take one; MP takes
    /// the implication first and its antecedent second.
    std::vector< std::size_t > refs;
    /// Schema arguments for Elim; matched against the formula when empty.
    std::vector< Formula > args;
    std::optional< AgentId > agent;
    PseudoModality pseudo;
    std::vector< std::string > fresh;
};

struct Proof
{
    std::vector< ProofLine > lines;
};

enum class ProofFailure
{
    none,
    bad_reference,
    shape_mismatch,
    not_enabled,
    freshness,
    not_tautology,
    budget
};

[[nodiscard]] std::string_view to_string( ProofFailure f );

struct ProofVerdict
{
    bool accepted = true;
    /// 1-based line of the first rejected step.
    std::optional< std::size_t > failing_line;
    ProofFailure failure = ProofFailure::none;
    std::string diagnosis;
};

/// Checks every line in order and stops at the first invalid one.
[[nodiscard]] ProofVerdict check_proof( const Proof& p, const ProofSystem& sys );

enum class TautologyResult
{
    tautology,
    not_tautology,
    budget_exceeded
};

/// Truth-table check of the propositional skeleton, in which maximal atom,
/// box and theta subformulas become variables (equal subformulas share one).
[[nodiscard]] TautologyResult check_tautology( const Formula& f, std::size_t max_atoms = 16 );

/// Placeholder bindings making `s` equal to `f`, if any.
[[nodiscard]] std::optional< std::vector< Formula > > match_schema( const Schema& s, const Formula& f );

/// Elimination instances over every tuple of `args` of the schema's arity,
/// trivial introduction instances, and interaction instances, grouped by
/// spec in system order.
[[nodiscard]] std::vector< Formula > axiom_instances( const ProofSystem& sys, const std::vector< Formula >& args );

/// One JSON object per non-blank line with keys formula, rule, refs, args,
/// and optionally agent, pseudo ([[agent, guard], ...]) and fresh. Throws
/// ValidationError naming the line for malformed input.
[[nodiscard]] Proof load_proof( std::string_view text, const ParseOptions& options = {} );
[[nodiscard]] Proof load_proof_file( const std::string& path, const ParseOptions& options = {} );
[[nodiscard]] std::string save_proof( const Proof& p );

} // namespace localmodal
