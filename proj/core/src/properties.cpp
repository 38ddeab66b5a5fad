#include "localmodal/properties.hpp"

#include "localmodal/error.hpp"
#include "localmodal/parse.hpp"
#include "localmodal/semantics.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace localmodal
{

namespace
{

// Properties are compiled once per frame into a flat tree over variable
// slots. A universal quantifier whose body is true whenever some R_a(v, x)
// fails only ranges over the a-successors of v.
class compiled_property
{
public:
    compiled_property( const LocalProperty& p, const Frame& f ) : _frame{ f }
    {
        _root = compile( p.body(), { { p.free_variable(), 0 } } );
    }

    bool eval( WorldIndex w )
    {
        _env.assign( _slots, 0 );
        _env[ 0 ] = w;
        return eval_node( _root );
    }

private:
    struct guard
    {
        AgentIndex agent;
        std::size_t source;
        bool operator<( const guard& o ) const { return std::tie( agent, source ) < std::tie( o.agent, o.source ); }
    };

    struct node
    {
        FoKind kind;
        AgentIndex agent = 0;
        std::size_t s = 0, t = 0; // variable slots; `s` is the bound slot for forall
        std::size_t a = 0, b = 0; // child nodes
        std::optional< guard > range;
    };

    using scope = std::map< std::string, std::size_t >;

    std::size_t compile( const FoFormula& f, const scope& vars )
    {
        node n{};
        n.kind = f.kind();
        switch ( f.kind() )
        {
        case FoKind::relation:
            n.agent = _frame.agent_index( f.agent() );
            n.s = vars.at( f.source() );
            n.t = vars.at( f.target() );
            break;
        case FoKind::equality:
            n.s = vars.at( f.source() );
            n.t = vars.at( f.target() );
            break;
        case FoKind::negation:
            n.a = compile( f.operand(), vars );
            break;
        case FoKind::disjunction:
            n.a = compile( f.left(), vars );
            n.b = compile( f.right(), vars );
            break;
        case FoKind::forall:
        {
            scope inner = vars;
            n.s = _slots++;
            inner[ f.variable() ] = n.s;
            n.a = compile( f.body(), inner );
            auto gs = guards( n.a, n.s, true );
            if ( !gs.empty() )
                n.range = *gs.begin();
            break;
        }
        }
        _nodes.push_back( n );
        return _nodes.size() - 1;
    }

    // Atoms R_a(v, x) such that node i is true (want_true) or false
    // (!want_true) whenever the atom fails.
    std::set< guard > guards( std::size_t i, std::size_t x, bool want_true ) const
    {
        const node& n = _nodes[ i ];
        switch ( n.kind )
        {
        case FoKind::relation:
            if ( !want_true && n.t == x && n.s != x )
                return { guard{ n.agent, n.s } };
            return {};
        case FoKind::equality:
            return {};
        case FoKind::negation:
            return guards( n.a, x, !want_true );
        case FoKind::disjunction:
        {
            auto l = guards( n.a, x, want_true );
            auto r = guards( n.b, x, want_true );
            if ( want_true )
            {
                l.insert( r.begin(), r.end() );
                return l;
            }
            std::set< guard > both;
            for ( const auto& g : l )
                if ( r.contains( g ) )
                    both.insert( g );
            return both;
        }
        case FoKind::forall:
        {
            std::set< guard > out;
            for ( const auto& g : guards( n.a, x, want_true ) )
                if ( g.source != n.s )
                    out.insert( g );
            return out;
        }
        }
        return {};
    }

    bool eval_node( std::size_t i )
    {
        const node& n = _nodes[ i ];
        switch ( n.kind )
        {
        case FoKind::relation:
            return _frame.has_edge( n.agent, _env[ n.s ], _env[ n.t ] );
        case FoKind::equality:
            return _env[ n.s ] == _env[ n.t ];
        case FoKind::negation:
            return !eval_node( n.a );
        case FoKind::disjunction:
            return eval_node( n.a ) || eval_node( n.b );
        case FoKind::forall:
            if ( n.range )
            {
                for ( WorldIndex v : _frame.successors( n.range->agent, _env[ n.range->source ] ) )
                {
                    _env[ n.s ] = v;
                    if ( !eval_node( n.a ) )
                        return false;
                }
                return true;
            }
            for ( WorldIndex v = 0; v < _frame.world_count(); ++v )
            {
                _env[ n.s ] = v;
                if ( !eval_node( n.a ) )
                    return false;
            }
            return true;
        }
        return false;
    }

    const Frame& _frame;
    std::vector< node > _nodes;
    std::size_t _root = 0;
    std::size_t _slots = 1;
    std::vector< WorldIndex > _env;
};

void check_agents( const LocalProperty& p, const Frame& f )
{
    for ( const auto& a : agents_of( p.body() ) )
        if ( !f.find_agent( a ) )
            throw LookupError( "property mentions undeclared agent '" + a + "'" );
}

struct family
{
    const char* name;
    const char* definition;
    const char* schema;
    const char* guard; // nullptr when the property has none
    std::size_t lookahead;
    CompletionRule completion;
};

// Relations without subscript refer to the principal agent; `[]`/`<>` too.
const family families[] = {
    { "tr", "forall x forall y ((R(w,x) & R(x,y)) -> R(w,y))", "[]p1 -> [][]p1", "[][]F", 2,
      CompletionRule::transitive },
    { "ref", "R(w,w)", "[]p1 -> p1", nullptr, 0, CompletionRule::reflexive },
    { "euc", "forall x forall y ((R(w,x) & R(w,y)) -> R(x,y))", "<>p1 -> []<>p1", "[]F", 1,
      CompletionRule::euclidean },
    { "sym", "forall x (R(w,x) -> R(x,w))", "p1 -> []<>p1", "[]F", 1, CompletionRule::symmetric },
    { "dense", "forall x exists y (R(w,x) -> (R(w,y) & R(y,x)))", "<>p1 -> <><>p1", "[]F", 2,
      CompletionRule::dense },
    { "func", "forall x forall y ((R(w,x) & R(w,y)) -> x=y)", "(<>p1 & <>p2) -> <>(p1 & p2)", "[]F", 1,
      CompletionRule::functional },
};

PropertySpec make_spec( std::string label, const family& fam, const AgentId& agent )
{
    ParseOptions opts{ { agent }, agent };
    Schema schema{ parse_formula( fam.schema, opts ) };
    PropertySpec spec{ .label = label,
                       .definition = parse_property( fam.definition, opts ),
                       .defining_schema = schema,
                       .elimination_schema = Schema{ Formula::implication( Formula::theta( label ), schema.body() ) },
                       .trivial_guard = std::nullopt,
                       .lookahead = fam.lookahead,
                       .completion = fam.completion,
                       .agents = { agent } };
    if ( fam.guard )
        spec.trivial_guard = parse_formula( fam.guard, opts );
    return spec;
}

PropertySpec make_superset( const AgentId& a, const AgentId& b )
{
    std::string label = "sup_" + a + "_" + b;
    ParseOptions opts{ { a, b } };
    LocalProperty def = parse_property( "forall x (R_" + b + "(w,x) -> R_" + a + "(w,x))", opts );
    Schema schema{ parse_formula( "[" + a + "]p1 -> [" + b + "]p1", opts ) };
    return PropertySpec{ .label = label,
                         .definition = def,
                         .defining_schema = schema,
                         .elimination_schema = Schema{ Formula::implication( Formula::theta( label ), schema.body() ) },
                         .trivial_guard = parse_formula( "[" + b + "]F", opts ),
                         .lookahead = 1,
                         .completion = CompletionRule::superset,
                         .agents = { a, b } };
}

} // namespace

bool eval_property( const LocalProperty& p, const Frame& f, WorldIndex w )
{
    check_agents( p, f );
    if ( w >= f.world_count() )
        throw LookupError( "world index out of range" );
    return compiled_property{ p, f }.eval( w );
}

WorldSet property_extension( const LocalProperty& p, const Frame& f )
{
    check_agents( p, f );
    WorldSet s( f.world_count() );
    compiled_property ev{ p, f };
    for ( WorldIndex w = 0; w < f.world_count(); ++w )
        s[ w ] = ev.eval( w );
    return s;
}

std::string_view to_string( CompletionRule r )
{
    switch ( r )
    {
    case CompletionRule::none: return "none";
    case CompletionRule::transitive: return "transitive";
    case CompletionRule::reflexive: return "reflexive";
    case CompletionRule::euclidean: return "euclidean";
    case CompletionRule::symmetric: return "symmetric";
    case CompletionRule::superset: return "superset";
    case CompletionRule::dense: return "dense";
    case CompletionRule::functional: return "functional";
    }
    return "none";
}

const std::vector< std::string >& builtin_families()
{
    static const std::vector< std::string > names{ "tr", "ref", "euc", "sym", "sup", "dense", "func" };
    return names;
}

PropertySpec builtin( std::string_view label, const AgentId& default_agent )
{
    std::string text{ label };
    if ( text.starts_with( "sup_" ) )
    {
        std::string rest = text.substr( 4 );
        auto cut = rest.find( '_' );
        if ( cut == std::string::npos || cut == 0 || cut + 1 == rest.size()
             || rest.find( '_', cut + 1 ) != std::string::npos )
            throw LookupError( "superset labels have the form sup_A_B, got '" + text + "'" );
        return make_superset( rest.substr( 0, cut ), rest.substr( cut + 1 ) );
    }
    for ( const auto& fam : families )
    {
        std::string name = fam.name;
        if ( text == name )
            return make_spec( text, fam, default_agent );
        if ( text.starts_with( name + "_" ) && text.size() > name.size() + 1 )
            return make_spec( text, fam, text.substr( name.size() + 1 ) );
    }
    throw LookupError( "unknown property label '" + text + "'" );
}

std::vector< PropertySpec > builtin_catalogue( const AgentId& a, const AgentId& b )
{
    std::vector< PropertySpec > out;
    for ( const auto& fam : families )
    {
        out.push_back( make_spec( fam.name, fam, a ) );
        if ( std::string_view{ fam.name } == "sym" )
            out.push_back( make_superset( a, b ) );
    }
    return out;
}

PropertySpec custom_property( std::string label, LocalProperty definition )
{
    auto agents = agents_of( definition.body() );
    return PropertySpec{ .label = std::move( label ),
                         .definition = std::move( definition ),
                         .defining_schema = std::nullopt,
                         .elimination_schema = std::nullopt,
                         .trivial_guard = std::nullopt,
                         .lookahead = 0,
                         .completion = CompletionRule::none,
                         .agents = { agents.begin(), agents.end() } };
}

WorldSet frame_validity( const Schema& s, const Frame& f, std::uint64_t budget, std::uint64_t seed )
{
    if ( budget == 0 )
        throw ArgumentError( "valuation budget must be positive" );
    const std::size_t n = f.world_count();
    const std::size_t bits = n * s.arity();
    KripkeModel m{ f };
    WorldSet valid( n );
    valid.set();

    auto check = [ & ]( auto&& bit_of ) {
        for ( std::size_t i = 0; i < s.arity(); ++i )
        {
            WorldSet v( n );
            for ( WorldIndex w = 0; w < n; ++w )
                v[ w ] = bit_of( i * n + w );
            m.set_valuation( Schema::placeholder( i + 1 ), std::move( v ) );
        }
        valid &= extension_of( m, s.body() );
    };

    const bool exhaustive = bits < 63 && ( std::uint64_t{ 1 } << bits ) <= budget;
    if ( exhaustive )
    {
        const std::uint64_t total = std::uint64_t{ 1 } << bits;
        for ( std::uint64_t code = 0; code < total && valid.any(); ++code )
            check( [ code ]( std::size_t bit ) { return ( ( code >> bit ) & 1U ) != 0; } );
    }
    else
    {
        std::mt19937_64 rng{ seed };
        std::vector< bool > draw( bits );
        for ( std::uint64_t k = 0; k < budget && valid.any(); ++k )
        {
            for ( std::size_t b = 0; b < bits; ++b )
                draw[ b ] = ( rng() >> 63 ) != 0;
            check( [ &draw ]( std::size_t bit ) { return static_cast< bool >( draw[ bit ] ); } );
        }
    }
    return valid;
}

bool locally_defines_check( const Schema& s, const LocalProperty& p, const Frame& f, WorldIndex w,
                            std::uint64_t budget, std::uint64_t seed )
{
    if ( w >= f.world_count() )
        throw LookupError( "world index out of range" );
    return frame_validity( s, f, budget, seed ).test( w ) == eval_property( p, f, w );
}

} // namespace localmodal
