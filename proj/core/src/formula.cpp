#include "localmodal/formula.hpp"

#include <algorithm>
#include <cassert>
#include <compare>
#include <unordered_map>

namespace localmodal
{

struct Formula::node
{
    FormulaKind kind;
    std::string name;
    Formula a;
    Formula b;
    std::size_t hash;
};

namespace
{

std::size_t mix( std::size_t seed, std::size_t v )
{
    return seed ^ ( v + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 ) );
}

} // namespace

Formula Formula::make( FormulaKind kind, std::string name, Formula a, Formula b )
{
    std::size_t h = std::hash< int >{}( static_cast< int >( kind ) );
    h = mix( h, std::hash< std::string >{}( name ) );
    if ( a._node )
        h = mix( h, a._node->hash );
    if ( b._node )
        h = mix( h, b._node->hash );
    auto n = std::make_shared< node >( node{ kind, std::move( name ), std::move( a ), std::move( b ), h } );
    return Formula{ std::move( n ) };
}

Formula Formula::atom( std::string name ) { return make( FormulaKind::atom, std::move( name ), {}, {} ); }

Formula Formula::top()
{
    static const Formula t = make( FormulaKind::top, {}, {}, {} );
    return t;
}

Formula Formula::negation( Formula operand )
{
    return make( FormulaKind::negation, {}, std::move( operand ), {} );
}

Formula Formula::disjunction( Formula left, Formula right )
{
    return make( FormulaKind::disjunction, {}, std::move( left ), std::move( right ) );
}

Formula Formula::box( AgentId agent, Formula operand )
{
    return make( FormulaKind::box, std::move( agent ), std::move( operand ), {} );
}

Formula Formula::theta( std::string label ) { return make( FormulaKind::theta, std::move( label ), {}, {} ); }

Formula Formula::bottom() { return negation( top() ); }

Formula Formula::conjunction( Formula left, Formula right )
{
    return negation( disjunction( negation( std::move( left ) ), negation( std::move( right ) ) ) );
}

Formula Formula::implication( Formula antecedent, Formula consequent )
{
    return disjunction( negation( std::move( antecedent ) ), std::move( consequent ) );
}

Formula Formula::equivalence( Formula left, Formula right )
{
    return conjunction( implication( left, right ), implication( right, left ) );
}

Formula Formula::diamond( AgentId agent, Formula operand )
{
    return negation( box( std::move( agent ), negation( std::move( operand ) ) ) );
}

FormulaKind Formula::kind() const { return _node->kind; }
const std::string& Formula::name() const { return _node->name; }

const Formula& Formula::operand() const
{
    assert( _node->a._node );
    return _node->a;
}

const Formula& Formula::right() const
{
    assert( _node->b._node );
    return _node->b;
}

std::size_t Formula::hash() const { return _node->hash; }

bool operator==( const Formula& lhs, const Formula& rhs )
{
    if ( lhs._node == rhs._node )
        return true;
    if ( !lhs._node || !rhs._node )
        return false;
    const auto& l = *lhs._node;
    const auto& r = *rhs._node;
    if ( l.hash != r.hash || l.kind != r.kind || l.name != r.name )
        return false;
    return l.a == r.a && l.b == r.b;
}

std::strong_ordering operator<=>( const Formula& lhs, const Formula& rhs )
{
    if ( lhs._node == rhs._node )
        return std::strong_ordering::equal;
    if ( !lhs._node )
        return std::strong_ordering::less;
    if ( !rhs._node )
        return std::strong_ordering::greater;
    const auto& l = *lhs._node;
    const auto& r = *rhs._node;
    if ( auto c = l.kind <=> r.kind; c != 0 )
        return c;
    if ( auto c = l.name <=> r.name; c != 0 )
        return c;
    if ( auto c = l.a <=> r.a; c != 0 )
        return c;
    return l.b <=> r.b;
}

std::size_t modal_depth( const Formula& f )
{
    switch ( f.kind() )
    {
    case FormulaKind::atom:
    case FormulaKind::top:
    case FormulaKind::theta:
        return 0;
    case FormulaKind::negation:
        return modal_depth( f.operand() );
    case FormulaKind::disjunction:
        return std::max( modal_depth( f.left() ), modal_depth( f.right() ) );
    case FormulaKind::box:
        return 1 + modal_depth( f.operand() );
    }
    return 0;
}

std::size_t formula_size( const Formula& f )
{
    switch ( f.kind() )
    {
    case FormulaKind::negation:
    case FormulaKind::box:
        return 1 + formula_size( f.operand() );
    case FormulaKind::disjunction:
        return 1 + formula_size( f.left() ) + formula_size( f.right() );
    default:
        return 1;
    }
}

namespace
{

template< typename Visit >
void walk( const Formula& f, Visit&& visit )
{
    visit( f );
    switch ( f.kind() )
    {
    case FormulaKind::negation:
    case FormulaKind::box:
        walk( f.operand(), visit );
        break;
    case FormulaKind::disjunction:
        walk( f.left(), visit );
        walk( f.right(), visit );
        break;
    default:
        break;
    }
}

std::set< std::string > collect( const Formula& f, FormulaKind kind )
{
    std::set< std::string > out;
    walk( f, [ & ]( const Formula& g ) {
        if ( g.kind() == kind )
            out.insert( g.name() );
    } );
    return out;
}

} // namespace

std::set< std::string > atoms_of( const Formula& f ) { return collect( f, FormulaKind::atom ); }
std::set< std::string > theta_labels_of( const Formula& f ) { return collect( f, FormulaKind::theta ); }
std::set< AgentId > agents_of( const Formula& f ) { return collect( f, FormulaKind::box ); }

std::optional< std::pair< Formula, Formula > > match_implication( const Formula& f )
{
    if ( f.kind() != FormulaKind::disjunction || f.left().kind() != FormulaKind::negation )
        return std::nullopt;
    return std::pair{ f.left().operand(), f.right() };
}

std::optional< std::pair< Formula, Formula > > match_conjunction( const Formula& f )
{
    if ( f.kind() != FormulaKind::negation )
        return std::nullopt;
    const Formula& d = f.operand();
    if ( d.kind() != FormulaKind::disjunction || d.left().kind() != FormulaKind::negation
         || d.right().kind() != FormulaKind::negation )
        return std::nullopt;
    return std::pair{ d.left().operand(), d.right().operand() };
}

std::optional< std::pair< AgentId, Formula > > match_diamond( const Formula& f )
{
    if ( f.kind() != FormulaKind::negation || f.operand().kind() != FormulaKind::box
         || f.operand().operand().kind() != FormulaKind::negation )
        return std::nullopt;
    return std::pair{ f.operand().agent(), f.operand().operand().operand() };
}

} // namespace localmodal
