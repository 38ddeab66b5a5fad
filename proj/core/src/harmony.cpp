#include "localmodal/harmony.hpp"

#include "localmodal/bisim.hpp"
#include "localmodal/error.hpp"
#include "localmodal/print.hpp"
#include "localmodal/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace localmodal
{

namespace
{

const WorldSet& delta_of( const KripkeModel& m, const PropertySpec& spec ) { return m.extension( spec.label ); }

std::vector< WorldIndex > members( const WorldSet& s )
{
    std::vector< WorldIndex > out;
    for ( auto w = s.find_first(); w != WorldSet::npos; w = s.find_next( w ) )
        out.push_back( w );
    return out;
}

AgentIndex principal( const Frame& f, const PropertySpec& spec, std::size_t i = 0 )
{
    if ( spec.agents.size() <= i )
        throw ArgumentError( "property '" + spec.label + "' does not name enough agents" );
    return f.agent_index( spec.agents[ i ] );
}

// Mutable unravelling used while harmonizing.
class working_model
{
public:
    working_model( const KripkeModel& source, std::size_t max_worlds )
        : _source{ source }, _agents{ source.frame().agent_count() }, _succ( _agents ), _max{ max_worlds }
    {}

    WorldIndex add( std::string id, WorldIndex original, std::optional< std::size_t > depth )
    {
        if ( ids.size() >= _max )
            throw ArgumentError( "unravelling exceeds " + std::to_string( _max ) + " worlds" );
        ids.push_back( std::move( id ) );
        originals.push_back( original );
        depths.push_back( depth );
        for ( auto& s : _succ )
            s.emplace_back();
        return ids.size() - 1;
    }

    void build_tree( WorldIndex point, std::size_t d )
    {
        const Frame& f = _source.frame();
        const bool tagged = _agents > 1;
        add( f.world( point ), point, 0 );
        for ( WorldIndex i = 0; i < ids.size(); ++i )
        {
            const std::size_t k = *depths[ i ];
            if ( k == d )
                continue;
            for ( AgentIndex a = 0; a < _agents; ++a )
                for ( WorldIndex v : f.successors( a, originals[ i ] ) )
                {
                    std::string step = tagged ? f.agents()[ a ] + ":" + f.world( v ) : f.world( v );
                    WorldIndex c = add( ids[ i ] + "/" + step, v, k + 1 );
                    _succ[ a ][ i ].push_back( c );
                }
        }
        _depth = d;
    }

    void attach_tail()
    {
        const Frame& f = _source.frame();
        const std::size_t tree = ids.size();
        _tail = tree;
        for ( WorldIndex w = 0; w < f.world_count(); ++w )
            add( "tail:" + f.world( w ), w, std::nullopt );
        for ( AgentIndex a = 0; a < _agents; ++a )
        {
            for ( WorldIndex w = 0; w < f.world_count(); ++w )
                for ( WorldIndex v : f.successors( a, w ) )
                    _succ[ a ][ _tail + w ].push_back( _tail + v );
            for ( WorldIndex i = 0; i < tree; ++i )
                if ( *depths[ i ] == _depth )
                    for ( WorldIndex v : f.successors( a, originals[ i ] ) )
                        _succ[ a ][ i ].push_back( _tail + v );
        }
    }

    // Copies the tree below `s`; edges leaving the tree are shared.
    WorldIndex copy_subtree( WorldIndex s )
    {
        WorldIndex c = add( ids[ s ] + "#" + std::to_string( ++_copies ), originals[ s ], depths[ s ] );
        for ( AgentIndex a = 0; a < _agents; ++a )
        {
            std::vector< WorldIndex > targets = _succ[ a ][ s ];
            for ( WorldIndex t : targets )
            {
                WorldIndex u = depths[ t ] ? copy_subtree( t ) : t;
                _succ[ a ][ c ].push_back( u );
            }
        }
        return c;
    }

    // Gives each tree world above the fringe that `needs` a second
    // a-successor a copy of its unique successor's subtree.
    template < typename Pred >
    void split_unary( AgentIndex a, Pred needs )
    {
        for ( WorldIndex i = 0; i < ids.size(); ++i )
            if ( depths[ i ] && *depths[ i ] < _depth && _succ[ a ][ i ].size() == 1 && needs( i ) )
            {
                WorldIndex c = copy_subtree( _succ[ a ][ i ].front() );
                _succ[ a ][ i ].push_back( c );
            }
    }

    [[nodiscard]] std::size_t copies() const { return _copies; }
    [[nodiscard]] std::size_t tail() const { return _tail; }
    [[nodiscard]] std::size_t depth() const { return _depth; }
    [[nodiscard]] const std::vector< WorldIndex >& successors( AgentIndex a, WorldIndex w ) const
    {
        return _succ[ a ][ w ];
    }

    [[nodiscard]] KripkeModel to_model( const std::vector< std::vector< WorldSet > >* adjacency = nullptr ) const
    {
        KripkeModel m{ ids, _source.frame().agents() };
        for ( AgentIndex a = 0; a < _agents; ++a )
            for ( WorldIndex w = 0; w < ids.size(); ++w )
            {
                if ( adjacency )
                {
                    const WorldSet& s = ( *adjacency )[ a ][ w ];
                    for ( auto v = s.find_first(); v != WorldSet::npos; v = s.find_next( v ) )
                        m.frame().add_edge( a, w, v );
                }
                else
                    for ( WorldIndex v : _succ[ a ][ w ] )
                        m.frame().add_edge( a, w, v );
            }
        m = inherit( std::move( m ) );
        return m;
    }

    [[nodiscard]] UnravelledModel to_unravelled() const
    {
        return UnravelledModel{ to_model(), originals, depths, _depth, 0 };
    }

    std::vector< std::string > ids;
    std::vector< WorldIndex > originals;
    std::vector< std::optional< std::size_t > > depths;

private:
    KripkeModel inherit( KripkeModel m ) const
    {
        auto lift = [ & ]( const WorldSet& s ) {
            WorldSet out( ids.size() );
            for ( WorldIndex w = 0; w < ids.size(); ++w )
                out[ w ] = s.test( originals[ w ] );
            return out;
        };
        for ( const auto& [ label, s ] : _source.extensions() )
            m.set_extension( label, lift( s ) );
        for ( const auto& [ atom, s ] : _source.valuation() )
            m.set_valuation( atom, lift( s ) );
        return m;
    }

    const KripkeModel& _source;
    std::size_t _agents;
    std::vector< std::vector< std::vector< WorldIndex > > > _succ; // [agent][world]
    std::size_t _max;
    std::size_t _depth = 0;
    std::size_t _tail = 0;
    std::size_t _copies = 0;
};

// Edge completion over bitset adjacency with a fixed world set.
class completion
{
public:
    completion( const working_model& wm, const KripkeModel& source, std::size_t agents )
        : _wm{ wm }, _source{ source }, _n{ wm.ids.size() }
    {
        _adj.assign( agents, std::vector< WorldSet >( _n, WorldSet( _n ) ) );
        _children.resize( agents );
        for ( AgentIndex a = 0; a < agents; ++a )
        {
            _children[ a ].resize( _n );
            for ( WorldIndex w = 0; w < _n; ++w )
                for ( WorldIndex v : wm.successors( a, w ) )
                {
                    _adj[ a ][ w ].set( v );
                    if ( wm.depths[ w ] && wm.depths[ v ] )
                        _children[ a ][ w ].emplace( wm.originals[ v ], v );
                }
        }
    }

    // One application of the spec's rule at every tree world in Delta'. Returns
    // the number of edges added.
    std::size_t apply( const PropertySpec& spec, const WorldSet& delta )
    {
        const Frame& f = _source.frame();
        std::size_t added = 0;
        auto add = [ & ]( AgentIndex a, WorldIndex from, WorldIndex to ) {
            if ( !_adj[ a ][ from ].test( to ) )
            {
                _adj[ a ][ from ].set( to );
                ++added;
            }
        };
        auto each = [ & ]( const WorldSet& s, auto&& fn ) {
            for ( auto v = s.find_first(); v != WorldSet::npos; v = s.find_next( v ) )
                fn( v );
        };

        // Tail worlds keep their edges: repairing them would let the tail
        // glue separate branches together.
        for ( auto w = delta.find_first(); w != WorldSet::npos; w = delta.find_next( w ) )
        {
            if ( !_wm.depths[ w ] )
                continue;
            switch ( spec.completion )
            {
            case CompletionRule::transitive:
            {
                AgentIndex a = principal( f, spec );
                WorldSet reach = _adj[ a ][ w ];
                each( _adj[ a ][ w ], [ & ]( WorldIndex x ) { reach |= _adj[ a ][ x ]; } );
                added += reach.count() - _adj[ a ][ w ].count();
                _adj[ a ][ w ] = std::move( reach );
                break;
            }
            case CompletionRule::reflexive:
                add( principal( f, spec ), w, w );
                break;
            case CompletionRule::euclidean:
            {
                AgentIndex a = principal( f, spec );
                const WorldSet succ = _adj[ a ][ w ];
                each( succ, [ & ]( WorldIndex x ) {
                    added += ( succ - _adj[ a ][ x ] ).count();
                    _adj[ a ][ x ] |= succ;
                } );
                break;
            }
            case CompletionRule::symmetric:
            {
                AgentIndex a = principal( f, spec );
                each( WorldSet( _adj[ a ][ w ] ), [ & ]( WorldIndex x ) { add( a, x, w ); } );
                break;
            }
            case CompletionRule::superset:
            {
                AgentIndex a = principal( f, spec, 0 );
                AgentIndex b = principal( f, spec, 1 );
                added += ( _adj[ b ][ w ] - _adj[ a ][ w ] ).count();
                _adj[ a ][ w ] |= _adj[ b ][ w ];
                break;
            }
            case CompletionRule::dense:
                dense_step( principal( f, spec ), w, add );
                break;
            case CompletionRule::functional:
            case CompletionRule::none:
                break;
            }
        }
        return added;
    }

    [[nodiscard]] const std::vector< std::vector< WorldSet > >& adjacency() const { return _adj; }

private:
    template < typename Add >
    void dense_step( AgentIndex a, WorldIndex w, Add& add )
    {
        const Frame& f = _source.frame();
        const WorldSet succ = _adj[ a ][ w ];
        for ( auto x = succ.find_first(); x != WorldSet::npos; x = succ.find_next( x ) )
        {
            bool has_mid = false;
            for ( auto y = succ.find_first(); y != WorldSet::npos && !has_mid; y = succ.find_next( y ) )
                has_mid = _adj[ a ][ y ].test( x );
            if ( has_mid )
                continue;
            const WorldIndex ow = _wm.originals[ w ];
            const WorldIndex ox = _wm.originals[ x ];
            std::optional< WorldIndex > witness;
            for ( WorldIndex y : f.successors( a, ow ) )
                if ( f.has_edge( a, y, ox ) )
                {
                    witness = y;
                    break;
                }
            if ( !witness )
                continue;
            WorldIndex mid = structural( a, w, *witness );
            if ( mid == x && _wm.depths[ x ] )
            {
                // Avoid a loop at a tree world: route through the tail.
                mid = _wm.tail() + *witness;
                add( a, w, mid );
            }
            add( a, mid, x );
        }
    }

    WorldIndex structural( AgentIndex a, WorldIndex w, WorldIndex original ) const
    {
        if ( _wm.depths[ w ] && *_wm.depths[ w ] < _wm.depth() )
            if ( auto it = _children[ a ][ w ].find( original ); it != _children[ a ][ w ].end() )
                return it->second;
        return _wm.tail() + original;
    }

    const working_model& _wm;
    const KripkeModel& _source;
    std::size_t _n;
    std::vector< std::vector< WorldSet > > _adj;
    std::vector< std::vector< std::map< WorldIndex, WorldIndex > > > _children; // [agent][world] original -> first child
};

std::size_t max_lookahead( const std::vector< PropertySpec >& specs )
{
    std::size_t k = 0;
    for ( const auto& s : specs )
        k = std::max( k, s.lookahead );
    return k;
}

bool same_principal( const PropertySpec& a, const PropertySpec& b )
{
    return !a.agents.empty() && !b.agents.empty() && a.agents.front() == b.agents.front();
}

std::vector< std::string > names( const KripkeModel& m, const std::vector< WorldIndex >& ws )
{
    std::vector< std::string > out;
    for ( WorldIndex w : ws )
        out.push_back( m.world( w ) );
    return out;
}

} // namespace

HarmonyCheck is_harmonious( const KripkeModel& m, const PropertySpec& spec )
{
    const WorldSet& delta = delta_of( m, spec );
    const WorldSet theta = property_extension( spec.definition, m.frame() );
    HarmonyCheck r;
    r.missing = members( theta - delta );
    r.spurious = members( delta - theta );
    r.holds = r.missing.empty() && r.spurious.empty();
    return r;
}

NicenessCheck is_nice( const KripkeModel& m, const PropertySpec& spec )
{
    const WorldSet& delta = delta_of( m, spec );
    NicenessCheck r;
    r.property_failures = members( delta - property_extension( spec.definition, m.frame() ) );
    if ( spec.trivial_guard )
        r.guard_failures = members( extension_of( m, *spec.trivial_guard ) - delta );
    r.holds = r.property_failures.empty() && r.guard_failures.empty();
    return r;
}

std::vector< WorldIndex > interaction_violations( const KripkeModel& m, const std::vector< PropertySpec >& specs )
{
    WorldSet bad = m.empty_set();
    for ( const auto& e : specs )
        for ( const auto& r : specs )
        {
            if ( e.completion != CompletionRule::euclidean || r.completion != CompletionRule::reflexive
                 || !same_principal( e, r ) )
                continue;
            const WorldSet& de = delta_of( m, e );
            const WorldSet& dr = delta_of( m, r );
            AgentIndex a = principal( m.frame(), e );
            for ( auto w = de.find_first(); w != WorldSet::npos; w = de.find_next( w ) )
                for ( WorldIndex v : m.frame().successors( a, w ) )
                    if ( !dr.test( v ) )
                        bad.set( v );
        }
    return members( bad );
}

UnravelledModel unravel( const PointedModel& m, std::size_t d, bool attach_tail, std::size_t max_worlds )
{
    working_model wm{ m.model(), max_worlds };
    wm.build_tree( m.point(), d );
    if ( attach_tail )
        wm.attach_tail();
    return wm.to_unravelled();
}

HarmonizationReport harmonize( const PointedModel& pm, const std::vector< PropertySpec >& specs, std::size_t d,
                               const HarmonizeOptions& options )
{
    const KripkeModel& m = pm.model();
    const std::size_t look = max_lookahead( specs );
    if ( d < look + 1 )
        throw ArgumentError( "depth " + std::to_string( d ) + " is below the minimum " + std::to_string( look + 1 ) );
    for ( const auto& spec : specs )
    {
        if ( spec.completion == CompletionRule::none )
            throw ArgumentError( "property '" + spec.label + "' has no completion rule" );
        NicenessCheck nice = is_nice( m, spec );
        if ( !nice.holds )
        {
            std::vector< WorldIndex > bad = nice.property_failures;
            bad.insert( bad.end(), nice.guard_failures.begin(), nice.guard_failures.end() );
            std::sort( bad.begin(), bad.end() );
            throw PreconditionError( "model is not nice for '" + spec.label + "'", names( m, bad ) );
        }
    }
    if ( options.check_interaction )
        if ( auto bad = interaction_violations( m, specs ); !bad.empty() )
            throw PreconditionError( "euclidean successors outside the reflexive extension", names( m, bad ) );

    working_model wm{ m, options.max_worlds };
    wm.build_tree( pm.point(), d );
    wm.attach_tail();

    // Structural phase: worlds outside Delta(func), and outside Delta(euc)
    // when ref is also required, must not keep a unique successor.
    for ( const auto& spec : specs )
    {
        const bool func = spec.completion == CompletionRule::functional;
        const bool euc = spec.completion == CompletionRule::euclidean
                         && std::any_of( specs.begin(), specs.end(), [ & ]( const PropertySpec& r ) {
                                return r.completion == CompletionRule::reflexive && same_principal( spec, r );
                            } );
        if ( !func && !euc )
            continue;
        const WorldSet& delta = delta_of( m, spec );
        wm.split_unary( principal( m.frame(), spec ),
                        [ & ]( WorldIndex i ) { return !delta.test( wm.originals[ i ] ); } );
    }

    KripkeModel lifted = wm.to_model();
    std::vector< WorldSet > deltas;
    for ( const auto& spec : specs )
        deltas.push_back( lifted.extension( spec.label ) );

    completion comp{ wm, m, m.frame().agent_count() };
    HarmonizationReport r;
    while ( true )
    {
        ++r.iterations;
        std::size_t added = 0;
        for ( std::size_t i = 0; i < specs.size(); ++i )
            added += comp.apply( specs[ i ], deltas[ i ] );
        r.edges_added += added;
        if ( added == 0 )
            break;
    }

    r.result = wm.to_model( &comp.adjacency() );
    r.root = 0;
    r.depth = d;
    r.interior_radius = d - look;
    r.worlds_copied = wm.copies();
    r.originals = wm.originals;
    r.tree_depth = wm.depths;
    return r;
}

Verification verify_report( const PointedModel& pm, const HarmonizationReport& r,
                            const std::vector< PropertySpec >& specs, const std::vector< Formula >& battery )
{
    const KripkeModel& m = pm.model();
    const KripkeModel& res = r.result;
    const Frame& rf = res.frame();
    Verification v;
    auto fail = [ & ]( std::string msg ) { v.failures.push_back( std::move( msg ) ); };

    if ( r.originals.size() != res.world_count() || r.tree_depth.size() != res.world_count() )
    {
        fail( "G1: report maps do not cover the result worlds" );
        return v;
    }
    if ( r.originals[ r.root ] != pm.point() )
        fail( "G1: root " + res.world( r.root ) + " does not project to the point" );

    // G1: projection of edges, inheritance of Delta and V.
    for ( AgentIndex a = 0; a < rf.agent_count(); ++a )
    {
        auto src = m.frame().find_agent( rf.agents()[ a ] );
        for ( WorldIndex x = 0; x < res.world_count(); ++x )
            for ( WorldIndex y : rf.successors( a, x ) )
            {
                ++v.edges_checked;
                if ( !src || !m.frame().has_edge( *src, r.originals[ x ], r.originals[ y ] ) )
                    fail( "G1: edge " + rf.agents()[ a ] + ":(" + res.world( x ) + "," + res.world( y )
                          + ") projects to (" + m.world( r.originals[ x ] ) + "," + m.world( r.originals[ y ] )
                          + ") which is not an edge" );
            }
    }
    auto inherited = [ & ]( const char* kind, const std::string& name, const WorldSet& orig, const WorldSet* got ) {
        for ( WorldIndex w = 0; w < res.world_count(); ++w )
            if ( orig.test( r.originals[ w ] ) != ( got && got->test( w ) ) )
            {
                fail( std::string( "G1: " ) + kind + " '" + name + "' not inherited at " + res.world( w ) );
                return;
            }
    };
    for ( const auto& [ label, s ] : m.extensions() )
        inherited( "theta", label, s, res.has_extension( label ) ? &res.extension( label ) : nullptr );
    for ( const auto& [ atom, s ] : m.valuation() )
        inherited( "atom", atom, s, res.find_valuation( atom ) );

    // G2: interior harmony.
    for ( const auto& spec : specs )
    {
        if ( !res.has_extension( spec.label ) )
        {
            fail( "G2: result has no extension for '" + spec.label + "'" );
            continue;
        }
        const std::size_t radius = r.depth >= spec.lookahead ? r.depth - spec.lookahead : 0;
        const WorldSet theta = property_extension( spec.definition, rf );
        const WorldSet& delta = res.extension( spec.label );
        for ( WorldIndex w = 0; w < res.world_count(); ++w )
        {
            if ( !r.tree_depth[ w ] || *r.tree_depth[ w ] > radius )
                continue;
            ++v.worlds_checked;
            if ( theta.test( w ) != delta.test( w ) )
                fail( "G2: '" + spec.label + "' " + ( delta.test( w ) ? "in Delta but fails" : "holds outside Delta" )
                      + " at " + res.world( w ) );
        }
    }

    // G3: bounded agreement.
    Evaluator left{ m };
    Evaluator right{ res };
    for ( const auto& g : battery )
    {
        if ( modal_depth( g ) > r.interior_radius )
            continue;
        ++v.formulas_checked;
        if ( left.at( pm.point(), g ) != right.at( r.root, g ) )
            fail( "G3: " + print_formula( g ) + " differs at the root" );
    }
    if ( !d_bisimilar( pm, PointedModel{ res, r.root }, r.interior_radius ) )
        fail( "G3: root is not " + std::to_string( r.interior_radius ) + "-bisimilar to the point" );
    return v;
}

std::vector< Formula > standard_battery( const KripkeModel& m, std::size_t max_depth )
{
    const std::string atom = m.valuation().empty() ? "p" : m.valuation().begin()->first;
    const Formula p = Formula::atom( atom );
    const Formula bot = Formula::bottom();
    const Formula top = Formula::top();
    std::vector< Formula > out{ top, p, Formula::negation( p ) };
    const auto& agents = m.frame().agents();
    for ( const auto& a : agents )
    {
        auto box = [ & ]( Formula f ) { return Formula::box( a, std::move( f ) ); };
        auto dia = [ & ]( Formula f ) { return Formula::diamond( a, std::move( f ) ); };
        for ( Formula f : { box( bot ), dia( top ), box( p ), dia( p ), box( box( bot ) ), dia( dia( top ) ),
                            Formula::implication( box( p ), box( box( p ) ) ), Formula::implication( box( p ), p ),
                            Formula::implication( dia( p ), box( dia( p ) ) ),
                            Formula::implication( p, box( dia( p ) ) ), dia( box( bot ) ), box( dia( p ) ),
                            dia( dia( dia( p ) ) ), box( box( box( p ) ) ) } )
            out.push_back( f );
        for ( const auto& b : agents )
            if ( b != a )
                out.push_back( Formula::implication( box( p ), Formula::box( b, p ) ) );
    }
    std::erase_if( out, [ & ]( const Formula& f ) { return modal_depth( f ) > max_depth; } );
    return out;
}

UnravelledModel anti_preservation_witness( const PointedModel& pm, const PropertySpec& spec )
{
    working_model wm{ pm.model(), 1'000'000 };
    const std::size_t d = std::max< std::size_t >( spec.lookahead, 1 );
    wm.build_tree( pm.point(), d );
    wm.attach_tail();
    if ( spec.completion == CompletionRule::functional )
        wm.split_unary( principal( pm.model().frame(), spec ), []( WorldIndex i ) { return i == 0; } );
    return wm.to_unravelled();
}

} // namespace localmodal
