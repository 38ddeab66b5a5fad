#include "localmodal/schema.hpp"

#include "localmodal/error.hpp"

#include <algorithm>
#include <cctype>

namespace localmodal
{

bool Schema::is_placeholder( const std::string& atom )
{
    if ( atom.size() < 2 || atom[ 0 ] != 'p' || atom[ 1 ] == '0' )
        return false;
    return std::all_of( atom.begin() + 1, atom.end(),
                        []( unsigned char c ) { return std::isdigit( c ) != 0; } );
}

std::string Schema::placeholder( std::size_t index ) { return "p" + std::to_string( index ); }

Schema::Schema( Formula body ) : _body{ std::move( body ) }, _arity{ 0 }
{
    std::set< std::size_t > seen;
    for ( const auto& a : atoms_of( _body ) )
        if ( is_placeholder( a ) )
            seen.insert( std::stoul( a.substr( 1 ) ) );
    _arity = seen.size();
    if ( !seen.empty() && *seen.rbegin() != _arity )
        throw ArgumentError( "schema placeholders must be p1..p" + std::to_string( _arity ) );
}

Formula substitute( const Formula& f, const std::map< std::string, Formula >& replacement )
{
    switch ( f.kind() )
    {
    case FormulaKind::atom:
    {
        auto it = replacement.find( f.name() );
        return it == replacement.end() ? f : it->second;
    }
    case FormulaKind::top:
    case FormulaKind::theta:
        return f;
    case FormulaKind::negation:
    {
        Formula op = substitute( f.operand(), replacement );
        return op.node_id() == f.operand().node_id() ? f : Formula::negation( op );
    }
    case FormulaKind::box:
    {
        Formula op = substitute( f.operand(), replacement );
        return op.node_id() == f.operand().node_id() ? f : Formula::box( f.agent(), op );
    }
    case FormulaKind::disjunction:
    {
        Formula l = substitute( f.left(), replacement );
        Formula r = substitute( f.right(), replacement );
        if ( l.node_id() == f.left().node_id() && r.node_id() == f.right().node_id() )
            return f;
        return Formula::disjunction( l, r );
    }
    }
    return f;
}

Formula instantiate( const Schema& s, std::span< const Formula > args )
{
    if ( args.size() != s.arity() )
        throw ArgumentError( "schema of arity " + std::to_string( s.arity() ) + " given "
                             + std::to_string( args.size() ) + " arguments" );
    std::map< std::string, Formula > replacement;
    for ( std::size_t i = 0; i < args.size(); ++i )
        replacement.emplace( Schema::placeholder( i + 1 ), args[ i ] );
    return substitute( s.body(), replacement );
}

} // namespace localmodal
