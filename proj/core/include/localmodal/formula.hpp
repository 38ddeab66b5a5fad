#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace localmodal
{

using AgentId = std::string;

/// Node kinds stored in a formula tree. Conjunction, implication,
/// equivalence, falsum and diamond are sugar over these and never stored.
enum class FormulaKind
{
    atom,
    top,
    negation,
    disjunction,
    box,
    theta
};

/// Immutable modal formula with structural equality. Copies share the
/// underlying tree.
class Formula
{
public:
    static Formula atom( std::string name );
    static Formula top();
    static Formula negation( Formula operand );
    static Formula disjunction( Formula left, Formula right );
    static Formula box( AgentId agent, Formula operand );
    static Formula theta( std::string label );

    // Sugar, expanded on construction.
    static Formula bottom();
    static Formula conjunction( Formula left, Formula right );
    static Formula implication( Formula antecedent, Formula consequent );
    static Formula equivalence( Formula left, Formula right );
    static Formula diamond( AgentId agent, Formula operand );

    [[nodiscard]] FormulaKind kind() const;

    /// Atom name, theta label, or box agent depending on kind.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const AgentId& agent() const { return name(); }
    [[nodiscard]] const std::string& label() const { return name(); }

    /// Operand of negation and box; left disjunct.
    [[nodiscard]] const Formula& operand() const;
    [[nodiscard]] const Formula& left() const { return operand(); }
    [[nodiscard]] const Formula& right() const;

    [[nodiscard]] std::size_t hash() const;

    /// Identity of the shared node; stable while any copy is alive.
    [[nodiscard]] const void* node_id() const { return _node.get(); }

    friend bool operator==( const Formula& lhs, const Formula& rhs );
    friend std::strong_ordering operator<=>( const Formula& lhs, const Formula& rhs );

private:
    struct node;
    Formula() = default;
    explicit Formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}
    static Formula make( FormulaKind kind, std::string name, Formula a, Formula b );

    std::shared_ptr< const node > _node;
};

/// Maximum nesting of boxes along any branch; theta symbols have depth 0.
[[nodiscard]] std::size_t modal_depth( const Formula& f );

[[nodiscard]] std::size_t formula_size( const Formula& f );

[[nodiscard]] std::set< std::string > atoms_of( const Formula& f );
[[nodiscard]] std::set< std::string > theta_labels_of( const Formula& f );
[[nodiscard]] std::set< AgentId > agents_of( const Formula& f );

// Matchers for the sugared shapes over the stored variants.
[[nodiscard]] std::optional< std::pair< Formula, Formula > > match_implication( const Formula& f );
[[nodiscard]] std::optional< std::pair< Formula, Formula > > match_conjunction( const Formula& f );
[[nodiscard]] std::optional< std::pair< AgentId, Formula > > match_diamond( const Formula& f );

} // namespace localmodal

template<>
struct std::hash< localmodal::Formula >
{
    std::size_t operator()( const localmodal::Formula& f ) const noexcept { return f.hash(); }
};
