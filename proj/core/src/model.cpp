#include "localmodal/model.hpp"

#include "localmodal/error.hpp"

#include <algorithm>

namespace localmodal
{

Frame::Frame( std::vector< std::string > worlds, std::vector< AgentId > agents )
{
    for ( auto& a : agents )
        add_agent( std::move( a ) );
    for ( auto& w : worlds )
        add_world( std::move( w ) );
}

std::optional< WorldIndex > Frame::find_world( const std::string& id ) const
{
    auto it = _world_index.find( id );
    if ( it == _world_index.end() )
        return std::nullopt;
    return it->second;
}

WorldIndex Frame::world_index( const std::string& id ) const
{
    if ( auto w = find_world( id ) )
        return *w;
    throw LookupError( "unknown world '" + id + "'" );
}

std::optional< AgentIndex > Frame::find_agent( const AgentId& a ) const
{
    auto it = std::find( _agents.begin(), _agents.end(), a );
    if ( it == _agents.end() )
        return std::nullopt;
    return static_cast< AgentIndex >( it - _agents.begin() );
}

AgentIndex Frame::agent_index( const AgentId& a ) const
{
    if ( auto i = find_agent( a ) )
        return *i;
    throw LookupError( "unknown agent '" + a + "'" );
}

WorldIndex Frame::add_world( std::string id )
{
    if ( id.empty() )
        throw ValidationError( "", "world ids must be nonempty" );
    WorldIndex w = _worlds.size();
    if ( !_world_index.emplace( id, w ).second )
        throw ValidationError( "", "duplicate world id '" + id + "'" );
    _worlds.push_back( std::move( id ) );
    for ( auto& per_agent : _succ )
        per_agent.emplace_back();
    return w;
}

AgentIndex Frame::add_agent( AgentId a )
{
    if ( a.empty() )
        throw ValidationError( "", "agent ids must be nonempty" );
    if ( find_agent( a ) )
        throw ValidationError( "", "duplicate agent '" + a + "'" );
    _agents.push_back( std::move( a ) );
    _succ.emplace_back( _worlds.size() );
    return _agents.size() - 1;
}

bool Frame::add_edge( AgentIndex a, WorldIndex from, WorldIndex to )
{
    auto& list = _succ.at( a ).at( from );
    if ( to >= _worlds.size() )
        throw LookupError( "edge target out of range" );
    auto it = std::lower_bound( list.begin(), list.end(), to );
    if ( it != list.end() && *it == to )
        return false;
    list.insert( it, to );
    return true;
}

void Frame::clear_edges( AgentIndex a )
{
    for ( auto& list : _succ.at( a ) )
        list.clear();
}

bool Frame::has_edge( AgentIndex a, WorldIndex from, WorldIndex to ) const
{
    const auto& list = _succ[ a ][ from ];
    return std::binary_search( list.begin(), list.end(), to );
}

std::size_t Frame::edge_count() const
{
    std::size_t n = 0;
    for ( AgentIndex a = 0; a < _agents.size(); ++a )
        n += edge_count( a );
    return n;
}

std::size_t Frame::edge_count( AgentIndex a ) const
{
    std::size_t n = 0;
    for ( const auto& list : _succ[ a ] )
        n += list.size();
    return n;
}

bool operator==( const Frame& lhs, const Frame& rhs )
{
    return lhs._worlds == rhs._worlds && lhs._agents == rhs._agents && lhs._succ == rhs._succ;
}

WorldIndex KripkeModel::add_world( std::string id )
{
    WorldIndex w = _frame.add_world( std::move( id ) );
    for ( auto& [ _, s ] : _theta )
        s.resize( _frame.world_count() );
    for ( auto& [ _, s ] : _valuation )
        s.resize( _frame.world_count() );
    return w;
}

void KripkeModel::set_extension( const std::string& label, WorldSet worlds )
{
    worlds.resize( world_count() );
    _theta[ label ] = std::move( worlds );
}

const WorldSet& KripkeModel::extension( const std::string& label ) const
{
    auto it = _theta.find( label );
    if ( it == _theta.end() )
        throw LookupError( "model has no extension for theta label '" + label + "'" );
    return it->second;
}

void KripkeModel::set_valuation( const std::string& atom, WorldSet worlds )
{
    worlds.resize( world_count() );
    _valuation[ atom ] = std::move( worlds );
}

const WorldSet* KripkeModel::find_valuation( const std::string& atom ) const
{
    auto it = _valuation.find( atom );
    return it == _valuation.end() ? nullptr : &it->second;
}

PointedModel::PointedModel( const KripkeModel& model, WorldIndex point ) : _model{ &model }, _point{ point }
{
    if ( point >= model.world_count() )
        throw LookupError( "point index " + std::to_string( point ) + " out of range" );
}

PointedModel::PointedModel( const KripkeModel& model, const std::string& point )
    : _model{ &model }, _point{ model.world_index( point ) }
{}

std::vector< std::string > successors( const KripkeModel& m, const AgentId& a, const std::string& w )
{
    const Frame& f = m.frame();
    std::vector< std::string > out;
    for ( WorldIndex v : f.successors( f.agent_index( a ), f.world_index( w ) ) )
        out.push_back( f.world( v ) );
    return out;
}

Frame underlying_frame( const KripkeModel& m ) { return m.frame(); }

std::vector< std::string > world_names( const Frame& f, const WorldSet& s )
{
    std::vector< std::string > out;
    for ( auto w = s.find_first(); w != WorldSet::npos; w = s.find_next( w ) )
        out.push_back( f.world( w ) );
    return out;
}

} // namespace localmodal
