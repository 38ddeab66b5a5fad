#include "localmodal/search.hpp"

#include "localmodal/error.hpp"
#include "localmodal/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace localmodal
{

namespace
{

std::vector< std::string > world_ids( std::size_t n )
{
    std::vector< std::string > out;
    for ( std::size_t i = 0; i < n; ++i )
        out.push_back( "w" + std::to_string( i ) );
    return out;
}

class bernoulli
{
public:
    explicit bernoulli( std::uint64_t seed ) : _rng{ seed } {}

    bool operator()( double p )
    {
        const std::uint64_t draw = _rng();
        if ( p <= 0.0 )
            return false;
        if ( p >= 1.0 )
            return true;
        return static_cast< double >( draw ) < std::ldexp( p, 64 );
    }

private:
    std::mt19937_64 _rng;
};

} // namespace

double model_count( const EnumerationSpace& s )
{
    const double n = static_cast< double >( s.worlds );
    return std::exp2( static_cast< double >( s.agents.size() ) * n * n
                      + static_cast< double >( s.labels.size() + s.atoms.size() ) * n );
}

ModelEnumerator::ModelEnumerator( EnumerationSpace space, double cap ) : _space{ std::move( space ) }
{
    if ( _space.worlds == 0 )
        throw ArgumentError( "models need at least one world" );
    for ( const auto& h : _space.harmonious )
        for ( const auto& l : _space.labels )
            if ( h.label == l )
                throw ArgumentError( "label '" + l + "' is both enumerated and harmonious" );
    const std::size_t n = _space.worlds;
    _rel_bits = _space.agents.size() * n * n;
    _delta_bits = _space.labels.size() * n;
    _val_bits = _space.atoms.size() * n;
    const double estimate = model_count( _space );
    if ( estimate > cap || _rel_bits + _delta_bits + _val_bits >= 64 )
        throw CapExceeded( estimate, cap );
    _count = std::uint64_t{ 1 } << ( _rel_bits + _delta_bits + _val_bits );
}

KripkeModel ModelEnumerator::model_at( std::uint64_t index ) const
{
    if ( index >= _count )
        throw ArgumentError( "model index out of range" );
    const std::size_t n = _space.worlds;
    const std::uint64_t val = index & ( ( std::uint64_t{ 1 } << _val_bits ) - 1 );
    const std::uint64_t delta = ( index >> _val_bits ) & ( ( std::uint64_t{ 1 } << _delta_bits ) - 1 );
    const std::uint64_t rel = index >> ( _val_bits + _delta_bits );

    KripkeModel m{ world_ids( n ), _space.agents };
    for ( std::size_t k = 0; k < _rel_bits; ++k )
        if ( ( rel >> k ) & 1U )
            m.frame().add_edge( k / ( n * n ), ( k / n ) % n, k % n );
    auto sets = [ & ]( const std::vector< std::string >& names, std::uint64_t bits, auto&& store ) {
        for ( std::size_t j = 0; j < names.size(); ++j )
        {
            WorldSet s( n );
            for ( std::size_t w = 0; w < n; ++w )
                s[ w ] = ( ( bits >> ( j * n + w ) ) & 1U ) != 0;
            store( names[ j ], std::move( s ) );
        }
    };
    sets( _space.labels, delta, [ &m ]( const std::string& l, WorldSet s ) { m.set_extension( l, std::move( s ) ); } );
    for ( const auto& h : _space.harmonious )
        m.set_extension( h.label, property_extension( h.definition, m.frame() ) );
    sets( _space.atoms, val, [ &m ]( const std::string& a, WorldSet s ) { m.set_valuation( a, std::move( s ) ); } );
    return m;
}

bool ModelEnumerator::for_each( const std::function< bool( const KripkeModel&, std::uint64_t ) >& fn,
                                std::uint64_t begin, std::uint64_t end ) const
{
    end = std::min( end, _count );
    for ( std::uint64_t i = begin; i < end; ++i )
        if ( !fn( model_at( i ), i ) )
            return false;
    return true;
}

std::optional< Countermodel > find_countermodel( const Formula& f, const std::vector< PropertySpec >& specs,
                                                 bool require_harmony, const SearchCaps& caps )
{
    std::set< AgentId > agents = agents_of( f );
    std::set< std::string > labels = theta_labels_of( f );
    for ( const auto& s : specs )
    {
        agents.insert( s.agents.begin(), s.agents.end() );
        labels.insert( s.label );
    }
    if ( agents.empty() )
        agents.insert( "a" );
    auto atoms = atoms_of( f );

    std::vector< EnumerationSpace > spaces;
    double total = 0;
    for ( std::size_t n = 1; n <= caps.max_worlds; ++n )
    {
        EnumerationSpace s{ n, { agents.begin(), agents.end() }, { atoms.begin(), atoms.end() }, {}, {} };
        for ( const auto& l : labels )
        {
            auto spec = std::find_if( specs.begin(), specs.end(), [ & ]( const PropertySpec& p ) { return p.label == l; } );
            if ( require_harmony && spec != specs.end() )
                s.harmonious.push_back( *spec );
            else
                s.labels.push_back( l );
        }
        total += model_count( s );
        spaces.push_back( std::move( s ) );
    }
    if ( total > caps.max_models )
        throw CapExceeded( total, caps.max_models );

    for ( auto& s : spaces )
    {
        ModelEnumerator e{ s, caps.max_models };
        std::optional< Countermodel > found;
        e.for_each( [ & ]( const KripkeModel& m, std::uint64_t ) {
            WorldSet ext = extension_of( m, f );
            if ( ext.all() )
                return true;
            found = Countermodel{ m, ( ~ext ).find_first() };
            return false;
        } );
        if ( found )
            return found;
    }
    return std::nullopt;
}

KripkeModel random_model( std::uint64_t seed, const RandomModelParams& p )
{
    if ( p.worlds == 0 )
        throw ArgumentError( "models need at least one world" );
    bernoulli coin{ seed };
    const std::size_t n = p.worlds;
    KripkeModel m{ world_ids( n ), p.agents };
    for ( AgentIndex a = 0; a < p.agents.size(); ++a )
        for ( WorldIndex u = 0; u < n; ++u )
            for ( WorldIndex v = 0; v < n; ++v )
                if ( coin( p.edge_density ) )
                    m.frame().add_edge( a, u, v );
    auto draw = [ & ]( double density ) {
        WorldSet s( n );
        for ( WorldIndex w = 0; w < n; ++w )
            s[ w ] = coin( density );
        return s;
    };
    for ( const auto& l : p.labels )
        m.set_extension( l, draw( p.delta_density ) );
    for ( const auto& a : p.atoms )
        m.set_valuation( a, draw( p.valuation_density ) );
    return m;
}

KripkeModel random_nice_model( std::uint64_t seed, const RandomModelParams& params,
                               const std::vector< PropertySpec >& specs )
{
    RandomModelParams p = params;
    for ( const auto& s : specs )
        if ( std::find( p.labels.begin(), p.labels.end(), s.label ) == p.labels.end() )
            p.labels.push_back( s.label );
    KripkeModel m = random_model( seed, p );
    for ( const auto& s : specs )
    {
        WorldSet delta = m.extension( s.label ) & property_extension( s.definition, m.frame() );
        if ( s.trivial_guard )
            delta |= extension_of( m, *s.trivial_guard );
        m.set_extension( s.label, std::move( delta ) );
    }
    return m;
}

} // namespace localmodal
