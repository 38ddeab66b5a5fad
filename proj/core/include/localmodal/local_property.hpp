#pragma once

#include "localmodal/formula.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>

namespace localmodal
{

enum class FoKind
{
    relation, // (s, t) in R(agent)
    equality,
    negation,
    disjunction,
    forall
};

/// First-order formula over relational predicates and equality.
class FoFormula
{
public:
    static FoFormula relation( AgentId agent, std::string source, std::string target );
    static FoFormula equality( std::string left, std::string right );
    static FoFormula negation( FoFormula operand );
    static FoFormula disjunction( FoFormula left, FoFormula right );
    static FoFormula forall( std::string variable, FoFormula body );

    static FoFormula conjunction( FoFormula left, FoFormula right );
    static FoFormula implication( FoFormula antecedent, FoFormula consequent );
    static FoFormula exists( std::string variable, FoFormula body );

    [[nodiscard]] FoKind kind() const;
    [[nodiscard]] const AgentId& agent() const;          // relation
    [[nodiscard]] const std::string& source() const;     // relation, equality (left)
    [[nodiscard]] const std::string& target() const;     // relation, equality (right)
    [[nodiscard]] const std::string& variable() const;   // forall
    [[nodiscard]] const FoFormula& operand() const;      // negation, forall body, left disjunct
    [[nodiscard]] const FoFormula& body() const { return operand(); }
    [[nodiscard]] const FoFormula& left() const { return operand(); }
    [[nodiscard]] const FoFormula& right() const;

    friend bool operator==( const FoFormula& lhs, const FoFormula& rhs );

private:
    struct node;
    FoFormula() = default;
    explicit FoFormula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

    std::shared_ptr< const node > _node;
};

[[nodiscard]] std::set< std::string > free_variables( const FoFormula& f );
[[nodiscard]] std::set< AgentId > agents_of( const FoFormula& f );

[[nodiscard]] std::optional< std::pair< FoFormula, FoFormula > > match_implication( const FoFormula& f );
[[nodiscard]] std::optional< std::pair< FoFormula, FoFormula > > match_conjunction( const FoFormula& f );
[[nodiscard]] std::optional< std::pair< std::string, FoFormula > > match_exists( const FoFormula& f );

/// A first-order formula with exactly one free variable, the world at which
/// the property is evaluated.
class LocalProperty
{
public:
    /// Throws ArgumentError unless `body` has exactly one free variable.
    explicit LocalProperty( FoFormula body );

    [[nodiscard]] const FoFormula& body() const { return _body; }
    [[nodiscard]] const std::string& free_variable() const { return _free; }

    friend bool operator==( const LocalProperty& lhs, const LocalProperty& rhs ) = default;

private:
    FoFormula _body;
    std::string _free;
};

} // namespace localmodal
