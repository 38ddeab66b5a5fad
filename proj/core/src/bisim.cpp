#include "localmodal/bisim.hpp"

#include "localmodal/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace localmodal
{

WorldRelation::WorldRelation( std::size_t left, std::size_t right )
    : _rows( left, WorldSet( right ) ), _right{ right }
{}

std::size_t WorldRelation::size() const
{
    std::size_t n = 0;
    for ( const auto& r : _rows )
        n += r.count();
    return n;
}

std::vector< std::pair< WorldIndex, WorldIndex > > WorldRelation::pairs() const
{
    std::vector< std::pair< WorldIndex, WorldIndex > > out;
    for ( WorldIndex l = 0; l < _rows.size(); ++l )
        for ( auto r = _rows[ l ].find_first(); r != WorldSet::npos; r = _rows[ l ].find_next( r ) )
            out.emplace_back( l, r );
    return out;
}

namespace
{

// Successor sets of both models indexed over a shared agent list; agents
// one model lacks have empty relations there.
struct joint_frames
{
    std::vector< std::vector< WorldSet > > left;  // [agent][world] successors in m1
    std::vector< std::vector< WorldSet > > right; // successors in m2

    joint_frames( const KripkeModel& m1, const KripkeModel& m2 )
    {
        std::set< AgentId > agents( m1.frame().agents().begin(), m1.frame().agents().end() );
        agents.insert( m2.frame().agents().begin(), m2.frame().agents().end() );
        for ( const auto& a : agents )
        {
            left.push_back( successor_sets( m1, a ) );
            right.push_back( successor_sets( m2, a ) );
        }
    }

    static std::vector< WorldSet > successor_sets( const KripkeModel& m, const AgentId& a )
    {
        const std::size_t n = m.world_count();
        std::vector< WorldSet > out( n, WorldSet( n ) );
        if ( auto idx = m.frame().find_agent( a ) )
            for ( WorldIndex w = 0; w < n; ++w )
                for ( WorldIndex v : m.frame().successors( *idx, w ) )
                    out[ w ].set( v );
        return out;
    }
};

void agree_on( WorldRelation& r, const std::map< std::string, WorldSet >& s1,
               const std::map< std::string, WorldSet >& s2, std::size_t n1, std::size_t n2 )
{
    std::set< std::string > names;
    for ( const auto& [ k, v ] : s1 )
        names.insert( k );
    for ( const auto& [ k, v ] : s2 )
        names.insert( k );
    for ( const auto& name : names )
    {
        auto i1 = s1.find( name );
        auto i2 = s2.find( name );
        WorldSet a = i1 != s1.end() ? i1->second : WorldSet( n1 );
        WorldSet b = i2 != s2.end() ? i2->second : WorldSet( n2 );
        WorldSet not_b = ~b;
        for ( WorldIndex l = 0; l < n1; ++l )
        {
            WorldSet row = r.row( l ) & ( a.test( l ) ? b : not_b );
            for ( WorldIndex x = 0; x < n2; ++x )
                r.set( l, x, row.test( x ) );
        }
    }
}

// True when (l, r) satisfies Forth and Back into `rel`.
bool zigzag( const joint_frames& jf, const WorldRelation& rel, WorldIndex l, WorldIndex r )
{
    for ( std::size_t a = 0; a < jf.left.size(); ++a )
    {
        const WorldSet& sl = jf.left[ a ][ l ];
        const WorldSet& sr = jf.right[ a ][ r ];
        for ( auto x = sl.find_first(); x != WorldSet::npos; x = sl.find_next( x ) )
            if ( !rel.row( x ).intersects( sr ) )
                return false;
        for ( auto y = sr.find_first(); y != WorldSet::npos; y = sr.find_next( y ) )
        {
            bool matched = false;
            for ( auto x = sl.find_first(); x != WorldSet::npos && !matched; x = sl.find_next( x ) )
                matched = rel.contains( x, y );
            if ( !matched )
                return false;
        }
    }
    return true;
}

} // namespace

WorldRelation atomic_agreement( const KripkeModel& m1, const KripkeModel& m2, const BisimOptions& options )
{
    const std::size_t n1 = m1.world_count();
    const std::size_t n2 = m2.world_count();
    WorldRelation r( n1, n2 );
    for ( WorldIndex l = 0; l < n1; ++l )
        for ( WorldIndex x = 0; x < n2; ++x )
            r.set( l, x );
    agree_on( r, m1.valuation(), m2.valuation(), n1, n2 );
    if ( !options.ignore_theta )
        agree_on( r, m1.extensions(), m2.extensions(), n1, n2 );
    return r;
}

WorldRelation largest_bisimulation( const KripkeModel& m1, const KripkeModel& m2, const BisimOptions& options )
{
    joint_frames jf{ m1, m2 };
    WorldRelation rel = atomic_agreement( m1, m2, options );
    bool changed = true;
    while ( changed )
    {
        changed = false;
        for ( auto [ l, r ] : rel.pairs() )
            if ( !zigzag( jf, rel, l, r ) )
            {
                rel.set( l, r, false );
                changed = true;
            }
    }
    return rel;
}

std::vector< std::size_t > bisimulation_partition( const KripkeModel& m, const BisimOptions& options )
{
    const std::size_t n = m.world_count();
    joint_frames jf{ m, m };

    // Initial blocks: identical atom (and label) signatures.
    std::vector< std::size_t > block( n, 0 );
    {
        std::map< std::vector< bool >, std::size_t > ids;
        for ( WorldIndex w = 0; w < n; ++w )
        {
            std::vector< bool > sig;
            for ( const auto& [ name, s ] : m.valuation() )
                sig.push_back( s.test( w ) );
            if ( !options.ignore_theta )
                for ( const auto& [ name, s ] : m.extensions() )
                    sig.push_back( s.test( w ) );
            block[ w ] = ids.emplace( sig, ids.size() ).first->second;
        }
    }

    std::size_t blocks = 0;
    while ( true )
    {
        // Refine by (own block, successor blocks per agent); renumber by
        // first occurrence so the result is canonical.
        using signature = std::pair< std::size_t, std::vector< std::set< std::size_t > > >;
        std::map< signature, std::size_t > ids;
        std::vector< std::size_t > next( n );
        for ( WorldIndex w = 0; w < n; ++w )
        {
            signature sig{ block[ w ], {} };
            for ( const auto& agent : jf.left )
            {
                std::set< std::size_t > succ;
                for ( auto v = agent[ w ].find_first(); v != WorldSet::npos; v = agent[ w ].find_next( v ) )
                    succ.insert( block[ v ] );
                sig.second.push_back( std::move( succ ) );
            }
            next[ w ] = ids.emplace( std::move( sig ), ids.size() ).first->second;
        }
        block = std::move( next );
        if ( ids.size() == blocks )
            break;
        blocks = ids.size();
    }
    return block;
}

bool bisimilar( const PointedModel& m1, const PointedModel& m2, const BisimOptions& options )
{
    return largest_bisimulation( m1.model(), m2.model(), options ).contains( m1.point(), m2.point() );
}

WorldRelation d_bisimulation( const KripkeModel& m1, const KripkeModel& m2, std::size_t d,
                              const BisimOptions& options )
{
    joint_frames jf{ m1, m2 };
    WorldRelation rel = atomic_agreement( m1, m2, options );
    for ( std::size_t k = 0; k < d; ++k )
    {
        WorldRelation next = rel;
        bool changed = false;
        for ( auto [ l, r ] : rel.pairs() )
            if ( !zigzag( jf, rel, l, r ) )
            {
                next.set( l, r, false );
                changed = true;
            }
        rel = std::move( next );
        if ( !changed )
            break;
    }
    return rel;
}

bool d_bisimilar( const PointedModel& m1, const PointedModel& m2, std::size_t d, const BisimOptions& options )
{
    return d_bisimulation( m1.model(), m2.model(), d, options ).contains( m1.point(), m2.point() );
}

bool is_bisimulation( const KripkeModel& m1, const KripkeModel& m2, const WorldRelation& r,
                      const BisimOptions& options )
{
    if ( r.left_size() != m1.world_count() || r.right_size() != m2.world_count() )
        throw ArgumentError( "relation dimensions do not match the models" );
    joint_frames jf{ m1, m2 };
    WorldRelation atoms = atomic_agreement( m1, m2, options );
    for ( auto [ l, x ] : r.pairs() )
        if ( !atoms.contains( l, x ) || !zigzag( jf, r, l, x ) )
            return false;
    return true;
}

std::vector< std::pair< std::string, std::string > > relation_ids( const KripkeModel& m1, const KripkeModel& m2,
                                                                   const WorldRelation& r )
{
    std::vector< std::pair< std::string, std::string > > out;
    for ( auto [ l, x ] : r.pairs() )
        out.emplace_back( m1.world( l ), m2.world( x ) );
    std::sort( out.begin(), out.end() );
    return out;
}

} // namespace localmodal
