#include "localmodal/local_property.hpp"

#include "localmodal/error.hpp"

#include <cassert>

namespace localmodal
{

struct FoFormula::node
{
    FoKind kind;
    std::string agent;
    std::string s;
    std::string t;
    FoFormula a;
    FoFormula b;
};

FoFormula FoFormula::relation( AgentId agent, std::string source, std::string target )
{
    return FoFormula{ std::make_shared< node >(
        node{ FoKind::relation, std::move( agent ), std::move( source ), std::move( target ), {}, {} } ) };
}

FoFormula FoFormula::equality( std::string left, std::string right )
{
    return FoFormula{ std::make_shared< node >(
        node{ FoKind::equality, {}, std::move( left ), std::move( right ), {}, {} } ) };
}

FoFormula FoFormula::negation( FoFormula operand )
{
    return FoFormula{ std::make_shared< node >( node{ FoKind::negation, {}, {}, {}, std::move( operand ), {} } ) };
}

FoFormula FoFormula::disjunction( FoFormula left, FoFormula right )
{
    return FoFormula{ std::make_shared< node >(
        node{ FoKind::disjunction, {}, {}, {}, std::move( left ), std::move( right ) } ) };
}

FoFormula FoFormula::forall( std::string variable, FoFormula body )
{
    return FoFormula{ std::make_shared< node >(
        node{ FoKind::forall, {}, std::move( variable ), {}, std::move( body ), {} } ) };
}

FoFormula FoFormula::conjunction( FoFormula left, FoFormula right )
{
    return negation( disjunction( negation( std::move( left ) ), negation( std::move( right ) ) ) );
}

FoFormula FoFormula::implication( FoFormula antecedent, FoFormula consequent )
{
    return disjunction( negation( std::move( antecedent ) ), std::move( consequent ) );
}

FoFormula FoFormula::exists( std::string variable, FoFormula body )
{
    return negation( forall( std::move( variable ), negation( std::move( body ) ) ) );
}

FoKind FoFormula::kind() const { return _node->kind; }
const AgentId& FoFormula::agent() const { return _node->agent; }
const std::string& FoFormula::source() const { return _node->s; }
const std::string& FoFormula::target() const { return _node->t; }
const std::string& FoFormula::variable() const { return _node->s; }

const FoFormula& FoFormula::operand() const
{
    assert( _node->a._node );
    return _node->a;
}

const FoFormula& FoFormula::right() const
{
    assert( _node->b._node );
    return _node->b;
}

bool operator==( const FoFormula& lhs, const FoFormula& rhs )
{
    if ( lhs._node == rhs._node )
        return true;
    if ( !lhs._node || !rhs._node )
        return false;
    const auto& l = *lhs._node;
    const auto& r = *rhs._node;
    return l.kind == r.kind && l.agent == r.agent && l.s == r.s && l.t == r.t && l.a == r.a && l.b == r.b;
}

namespace
{

void free_vars( const FoFormula& f, std::set< std::string >& bound, std::set< std::string >& out )
{
    auto note = [ & ]( const std::string& v ) {
        if ( !bound.contains( v ) )
            out.insert( v );
    };
    switch ( f.kind() )
    {
    case FoKind::relation:
    case FoKind::equality:
        note( f.source() );
        note( f.target() );
        break;
    case FoKind::negation:
        free_vars( f.operand(), bound, out );
        break;
    case FoKind::disjunction:
        free_vars( f.left(), bound, out );
        free_vars( f.right(), bound, out );
        break;
    case FoKind::forall:
    {
        bool fresh = bound.insert( f.variable() ).second;
        free_vars( f.body(), bound, out );
        if ( fresh )
            bound.erase( f.variable() );
        break;
    }
    }
}

void agents( const FoFormula& f, std::set< AgentId >& out )
{
    switch ( f.kind() )
    {
    case FoKind::relation:
        out.insert( f.agent() );
        break;
    case FoKind::equality:
        break;
    case FoKind::negation:
    case FoKind::forall:
        agents( f.operand(), out );
        break;
    case FoKind::disjunction:
        agents( f.left(), out );
        agents( f.right(), out );
        break;
    }
}

} // namespace

std::set< std::string > free_variables( const FoFormula& f )
{
    std::set< std::string > bound, out;
    free_vars( f, bound, out );
    return out;
}

std::set< AgentId > agents_of( const FoFormula& f )
{
    std::set< AgentId > out;
    agents( f, out );
    return out;
}

std::optional< std::pair< FoFormula, FoFormula > > match_implication( const FoFormula& f )
{
    if ( f.kind() != FoKind::disjunction || f.left().kind() != FoKind::negation )
        return std::nullopt;
    return std::pair{ f.left().operand(), f.right() };
}

std::optional< std::pair< FoFormula, FoFormula > > match_conjunction( const FoFormula& f )
{
    if ( f.kind() != FoKind::negation )
        return std::nullopt;
    const FoFormula& d = f.operand();
    if ( d.kind() != FoKind::disjunction || d.left().kind() != FoKind::negation
         || d.right().kind() != FoKind::negation )
        return std::nullopt;
    return std::pair{ d.left().operand(), d.right().operand() };
}

std::optional< std::pair< std::string, FoFormula > > match_exists( const FoFormula& f )
{
    if ( f.kind() != FoKind::negation || f.operand().kind() != FoKind::forall
         || f.operand().body().kind() != FoKind::negation )
        return std::nullopt;
    return std::pair{ f.operand().variable(), f.operand().body().operand() };
}

LocalProperty::LocalProperty( FoFormula body ) : _body{ std::move( body ) }
{
    auto vars = free_variables( _body );
    if ( vars.size() != 1 )
        throw ArgumentError( "local property must have exactly one free variable, found "
                             + std::to_string( vars.size() ) );
    _free = *vars.begin();
}

} // namespace localmodal
