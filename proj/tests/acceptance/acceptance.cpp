// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failed criteria.

#include "cli.hpp"
#include "test_support.hpp"

#include <localmodal/bisim.hpp>
#include <localmodal/harmony.hpp>
#include <localmodal/model_io.hpp>
#include <localmodal/parse.hpp>
#include <localmodal/print.hpp>
#include <localmodal/proofs.hpp>
#include <localmodal/search.hpp>
#include <localmodal/semantics.hpp>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace localmodal;
using namespace localmodal::testing;

namespace
{

// Tolerances and sizes.
constexpr std::size_t zero_tolerance = 0;
constexpr std::size_t harmonize_depth = 5;
constexpr std::size_t interaction_depth = 2;
constexpr std::size_t harmonize_models = 1000;
constexpr std::size_t bisim_samples = 20000;
constexpr std::size_t formulas_per_pair = 100;
constexpr std::size_t bisimilar_pairs_checked = 2000;
constexpr std::size_t roundtrip_formulas = 10000;
constexpr std::size_t roundtrip_models = 1000;
constexpr std::size_t min_curated = 10;
constexpr std::size_t min_mutated = 10;

struct outcome
{
    bool pass;
    std::string detail;
};

std::size_t failed = 0;
std::set< int > selected;

void report( int id, const std::string& name, const std::function< outcome() >& body )
{
    if ( !selected.empty() && !selected.contains( id ) )
        return;
    auto start = std::chrono::steady_clock::now();
    outcome o;
    try
    {
        o = body();
    }
    catch ( const std::exception& e )
    {
        o = { false, std::string( "exception: " ) + e.what() };
    }
    double secs = std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
    if ( !o.pass )
        ++failed;
    std::cout << ( o.pass ? "PASS" : "FAIL" ) << " [" << id << "] " << name << ": " << o.detail << " ("
              << std::fixed << std::setprecision( 1 ) << secs << " s)" << std::endl;
}

// Independent frame conditions, written directly against the frame.
bool direct_condition( const std::string& family, const Frame& f, WorldIndex w )
{
    const std::size_t n = f.world_count();
    auto r = [ & ]( WorldIndex x, WorldIndex y ) { return f.has_edge( 0, x, y ); };
    auto rb = [ & ]( WorldIndex x, WorldIndex y ) { return f.has_edge( 1, x, y ); };
    for ( WorldIndex x = 0; x < n; ++x )
        for ( WorldIndex y = 0; y < n; ++y )
        {
            if ( family == "tr" && r( w, x ) && r( x, y ) && !r( w, y ) )
                return false;
            if ( family == "euc" && r( w, x ) && r( w, y ) && !r( x, y ) )
                return false;
            if ( family == "func" && r( w, x ) && r( w, y ) && x != y )
                return false;
        }
    for ( WorldIndex x = 0; x < n; ++x )
    {
        if ( family == "sym" && r( w, x ) && !r( x, w ) )
            return false;
        if ( family == "sup" && rb( w, x ) && !r( w, x ) )
            return false;
        if ( family == "dense" && r( w, x ) )
        {
            bool mid = false;
            for ( WorldIndex y = 0; y < n; ++y )
                mid = mid || ( r( w, y ) && r( y, x ) );
            if ( !mid )
                return false;
        }
    }
    return family != "ref" || r( w, w );
}

outcome correspondence_sweep()
{
    std::size_t checks = 0, mismatches = 0, oracle_mismatches = 0;
    for ( const auto& family : builtin_families() )
    {
        const bool two = family == "sup";
        PropertySpec spec = builtin( two ? "sup_a_b" : family );
        const std::vector< AgentId > agents = two ? std::vector< AgentId >{ "a", "b" } : std::vector< AgentId >{ "a" };
        for ( std::size_t n = 1; n <= 3; ++n )
        {
            const std::uint64_t frames = std::uint64_t{ 1 } << ( agents.size() * n * n );
            const std::uint64_t budget = std::uint64_t{ 1 } << ( n * spec.defining_schema->arity() );
            for ( std::uint64_t bits = 0; bits < frames; ++bits )
            {
                KripkeModel m = frame_from_bits( n, bits, agents );
                for ( WorldIndex w = 0; w < n; ++w )
                {
                    ++checks;
                    if ( !locally_defines_check( *spec.defining_schema, spec.definition, m.frame(), w, budget ) )
                        ++mismatches;
                    if ( eval_property( spec.definition, m.frame(), w ) != direct_condition( family, m.frame(), w ) )
                        ++oracle_mismatches;
                }
            }
        }
    }
    return { mismatches == zero_tolerance && oracle_mismatches == zero_tolerance,
             std::to_string( checks ) + " (schema, frame, world) checks, " + std::to_string( mismatches )
                 + " definability mismatches, " + std::to_string( oracle_mismatches ) + " oracle mismatches" };
}

outcome soundness_sweep()
{
    std::size_t models = 0, checks = 0, violations = 0;
    for ( std::size_t agent_count = 1; agent_count <= 2; ++agent_count )
    {
        std::vector< AgentId > agents = agent_count == 1 ? std::vector< AgentId >{ "a" } : std::vector< AgentId >{ "a", "b" };
        std::vector< std::string > labels{ "tr", "ref", "euc", "sym", "dense", "func" };
        if ( agent_count == 2 )
        {
            labels.push_back( "sup_a_b" );
            labels.push_back( "sup_b_a" );
        }
        ProofSystem sys = make_system( labels );
        ParseOptions opts{ agents };
        std::vector< std::string > battery_text =
            agent_count == 1 ? std::vector< std::string >{ "p", "~p", "[a]p", "<a>p", "[a]p -> p", "<a>[a]p" }
                             : std::vector< std::string >{ "p", "~p", "[a]p", "<b>p", "[a][b]p", "<a>~p | [b]p" };
        std::vector< Formula > battery;
        for ( const auto& t : battery_text )
            battery.push_back( parse_formula( t, opts ) );
        const std::vector< Formula > instances = axiom_instances( sys, battery );

        for ( std::size_t n = 1; n <= 3; ++n )
        {
            ModelEnumerator frames{ EnumerationSpace{ n, agents, {}, {}, sys.specs }, 1 << 20 };
            frames.for_each( [ & ]( const KripkeModel& frame, std::uint64_t ) {
                KripkeModel m = frame;
                for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << n ); ++v )
                {
                    WorldSet p( n, v );
                    m.set_valuation( "p", p );
                    ++models;
                    Evaluator ev{ m };
                    for ( const auto& f : instances )
                    {
                        ++checks;
                        if ( !ev.extension( f ).all() )
                            ++violations;
                    }
                }
                return true;
            } );
        }
    }
    return { violations == zero_tolerance, std::to_string( models ) + " harmonious models, " + std::to_string( checks )
                                               + " instance checks, " + std::to_string( violations ) + " violations" };
}

// Nice for euc and ref with euclidean successors inside Delta(ref).
KripkeModel euc_ref_model( std::uint64_t seed, const RandomModelParams& p )
{
    PropertySpec euc = builtin( "euc" ), ref = builtin( "ref" );
    KripkeModel m = random_nice_model( seed, p, { ref, euc } );
    const WorldSet& dref = m.extension( "ref" );
    WorldSet deuc = m.extension( "euc" );
    const WorldSet guard = extension_of( m, *euc.trivial_guard );
    for ( WorldIndex w = 0; w < m.world_count(); ++w )
        for ( WorldIndex v : m.frame().successors( 0, w ) )
            if ( !dref.test( v ) && !guard.test( w ) )
                deuc.reset( w );
    m.set_extension( "euc", deuc );
    return m;
}

outcome harmonization_sweep()
{
    const std::vector< std::string > battery_a{ "T",        "p",          "[a]F",
                                                "<a>T",     "[a][a]F",    "[a]p -> [a][a]p",
                                                "<a>p -> [a]<a>p",        "p -> [a]<a>p",
                                                "[a]p -> p", "<a><a>p",   "[a](p | <a>~p)",
                                                "<a>[a][a]p" };
    const std::vector< std::string > battery_ab{ "[a]p -> [b]p", "<b>T",        "[b]F -> [a][b]p", "<a><b>p",
                                                 "[b][a]F",      "[a]p",        "<b>p",            "[a][b]<a>p",
                                                 "p -> [b]<b>p", "<a>T & [b]F", "[b](p -> <a>p)",  "[a][a]F" };
    const std::vector< std::vector< std::string > > configs{ { "tr" },  { "ref" },   { "euc" },  { "sym" },
                                                             { "sup_a_b" }, { "dense" }, { "func" },
                                                             { "tr", "ref" }, { "euc", "ref" } };
    std::size_t runs = 0, edges = 0, worlds = 0, formulas = 0;
    std::vector< std::string > failures;
    rng_t rng{ 20240601 };
    for ( const auto& labels : configs )
    {
        std::vector< PropertySpec > specs;
        for ( const auto& l : labels )
            specs.push_back( builtin( l ) );
        const bool two = labels.front() == "sup_a_b";
        std::string config;
        std::size_t min_depth = 1;
        for ( const auto& spec : specs )
        {
            config += ( config.empty() ? "" : "+" ) + spec.label;
            min_depth = std::max( min_depth, spec.lookahead + 1 );
        }
        std::vector< Formula > battery;
        for ( const auto& t : two ? battery_ab : battery_a )
            battery.push_back( parse_formula( t, ParseOptions{ two ? std::vector< AgentId >{ "a", "b" } : std::vector< AgentId >{ "a" } } ) );
        for ( std::size_t i = 0; i < harmonize_models; ++i )
        {
            RandomModelParams p;
            p.worlds = 1 + pick( rng, 4 );
            p.agents = two ? std::vector< AgentId >{ "a", "b" } : std::vector< AgentId >{ "a" };
            p.edge_density = 0.15 + 0.1 * static_cast< double >( pick( rng, 6 ) );
            const std::uint64_t seed = rng();
            KripkeModel m = labels == std::vector< std::string >{ "euc", "ref" } ? euc_ref_model( seed, p )
                                                                                 : random_nice_model( seed, p, specs );
            PointedModel pm{ m, pick( rng, m.world_count() ) };
            for ( std::size_t depth : { min_depth, harmonize_depth } )
            {
                HarmonizationReport r = harmonize( pm, specs, depth );
                Verification v = verify_report( pm, r, specs, battery );
                ++runs;
                edges += v.edges_checked;
                worlds += v.worlds_checked;
                formulas += v.formulas_checked;
                if ( !v.ok() )
                    failures.push_back( config + " seed " + std::to_string( seed ) + " d=" + std::to_string( depth ) + ": "
                                        + v.failures.front() );
            }
        }
    }
    std::string detail = std::to_string( runs ) + " harmonizations (minimal depth and d=" + std::to_string( harmonize_depth ) + "), "
                         + std::to_string( edges ) + " edges (G1), " + std::to_string( worlds )
                         + " interior worlds (G2), " + std::to_string( formulas ) + " formula checks (G3), "
                         + std::to_string( failures.size() ) + " failing runs";
    for ( std::size_t i = 0; i < failures.size() && i < 5; ++i )
        detail += "; " + failures[ i ];
    return { failures.size() == zero_tolerance, detail };
}

outcome anti_preservation_sweep()
{
    std::size_t cases = 0, exceptions = 0, not_bisimilar = 0;
    for ( const std::string label : { "tr", "euc", "sym", "sup_a_b", "dense", "func" } )
    {
        PropertySpec spec = builtin( label );
        const bool two = label == "sup_a_b";
        const std::vector< AgentId > agents = two ? std::vector< AgentId >{ "a", "b" } : std::vector< AgentId >{ "a" };
        for ( std::size_t n = 1; n <= 3; ++n )
            for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << ( agents.size() * n * n ) ); ++bits )
            {
                KripkeModel m = frame_from_bits( n, bits, agents );
                const WorldSet prop = property_extension( spec.definition, m.frame() );
                const WorldSet guard = extension_of( m, *spec.trivial_guard );
                for ( WorldIndex w = 0; w < n; ++w )
                {
                    if ( !prop.test( w ) || guard.test( w ) )
                        continue;
                    ++cases;
                    PointedModel pm{ m, w };
                    UnravelledModel u = anti_preservation_witness( pm, spec );
                    if ( eval_property( spec.definition, u.base.frame(), u.root ) )
                        ++exceptions;
                    if ( !bisimilar( pm, PointedModel{ u.base, u.root }, BisimOptions{ true } ) )
                        ++not_bisimilar;
                }
            }
    }
    return { exceptions == zero_tolerance && not_bisimilar == zero_tolerance,
             std::to_string( cases ) + " pointed frames with the property and without the guard, "
                 + std::to_string( exceptions ) + " roots keeping the property, " + std::to_string( not_bisimilar )
                 + " witnesses not bisimilar" };
}

outcome interaction_sweep()
{
    PropertySpec euc = builtin( "euc" ), ref = builtin( "ref" );
    const Formula axiom = parse_formula( "theta_euc -> [a]theta_ref" );
    std::size_t harmonious = 0, violations = 0;
    for ( std::size_t n = 1; n <= 3; ++n )
    {
        ModelEnumerator e{ EnumerationSpace{ n, { "a" }, {}, {}, { euc, ref } } };
        e.for_each( [ & ]( const KripkeModel& m, std::uint64_t ) {
            ++harmonious;
            if ( !valid_in_model( m, axiom ) )
                ++violations;
            return true;
        } );
    }

    std::size_t candidates = 0, broken = 0, rejected = 0;
    std::string example;
    for ( std::size_t n = 1; n <= 3; ++n )
    {
        ModelEnumerator e{ EnumerationSpace{ n, { "a" }, {}, { "euc", "ref" }, {} } };
        e.for_each( [ & ]( const KripkeModel& m, std::uint64_t ) {
            if ( !is_nice( m, euc ).holds || !is_nice( m, ref ).holds || interaction_violations( m, { euc, ref } ).empty() )
                return true;
            for ( WorldIndex w = 0; w < n; ++w )
            {
                ++candidates;
                PointedModel pm{ m, w };
                try
                {
                    (void)harmonize( pm, { euc, ref }, interaction_depth );
                }
                catch ( const PreconditionError& )
                {
                    ++rejected;
                }
                HarmonizationReport r = harmonize( pm, { euc, ref }, interaction_depth, HarmonizeOptions{ .check_interaction = false } );
                Verification v = verify_report( pm, r, { euc, ref }, {} );
                if ( !v.ok() )
                {
                    ++broken;
                    if ( example.empty() )
                        example = v.failures.front();
                }
            }
            return true;
        } );
    }
    return { violations == zero_tolerance && broken >= 1 && rejected == candidates,
             std::to_string( harmonious ) + " doubly harmonious models, " + std::to_string( violations )
                 + " violating theta_euc -> [a]theta_ref; " + std::to_string( candidates )
                 + " nice pointed models violating the precondition, all " + std::to_string( rejected )
                 + " rejected with it, " + std::to_string( broken ) + " unharmonizable without it (e.g. " + example + ")" };
}

// Small single-agent models with one atom, encoded as (n, edge bits, p bits).
struct tiny
{
    std::size_t n;
    std::uint64_t edges;
    std::uint64_t val;
};

KripkeModel build( const tiny& t )
{
    KripkeModel m = frame_from_bits( t.n, t.edges );
    m.set_valuation( "p", WorldSet( t.n, t.val ) );
    return m;
}

// Union of all bisimulations, by trying every subset of W1 x W2.
std::uint64_t oracle_bisim( const tiny& a, const tiny& b )
{
    const std::size_t cells = a.n * b.n;
    auto edge = []( const tiny& t, std::size_t u, std::size_t v ) { return ( ( t.edges >> ( u * t.n + v ) ) & 1U ) != 0; };
    auto holds = [ & ]( std::uint64_t rel ) {
        auto in = [ & ]( std::size_t x, std::size_t y ) { return ( ( rel >> ( x * b.n + y ) ) & 1U ) != 0; };
        for ( std::size_t x = 0; x < a.n; ++x )
            for ( std::size_t y = 0; y < b.n; ++y )
            {
                if ( !in( x, y ) )
                    continue;
                if ( ( ( a.val >> x ) & 1U ) != ( ( b.val >> y ) & 1U ) )
                    return false;
                for ( std::size_t x2 = 0; x2 < a.n; ++x2 )
                    if ( edge( a, x, x2 ) )
                    {
                        bool ok = false;
                        for ( std::size_t y2 = 0; y2 < b.n && !ok; ++y2 )
                            ok = edge( b, y, y2 ) && in( x2, y2 );
                        if ( !ok )
                            return false;
                    }
                for ( std::size_t y2 = 0; y2 < b.n; ++y2 )
                    if ( edge( b, y, y2 ) )
                    {
                        bool ok = false;
                        for ( std::size_t x2 = 0; x2 < a.n && !ok; ++x2 )
                            ok = edge( a, x, x2 ) && in( x2, y2 );
                        if ( !ok )
                            return false;
                    }
            }
        return true;
    };
    std::uint64_t all = 0;
    for ( std::uint64_t rel = 0; rel < ( std::uint64_t{ 1 } << cells ); ++rel )
        if ( ( rel | all ) != all && holds( rel ) )
            all |= rel;
    return all;
}

std::uint64_t engine_bisim( const KripkeModel& a, const KripkeModel& b )
{
    WorldRelation r = largest_bisimulation( a, b );
    std::uint64_t bits = 0;
    for ( auto [ x, y ] : r.pairs() )
        bits |= std::uint64_t{ 1 } << ( x * b.world_count() + y );
    return bits;
}

// Adds a copy of world `src` with the same successors, predecessors and atoms.
tiny duplicate_world( const tiny& t, std::size_t src )
{
    const std::size_t n = t.n + 1;
    tiny out{ n, 0, t.val | ( ( ( t.val >> src ) & 1U ) << t.n ) };
    auto old = [ & ]( std::size_t u, std::size_t v ) {
        u = u == t.n ? src : u;
        v = v == t.n ? src : v;
        return ( ( t.edges >> ( u * t.n + v ) ) & 1U ) != 0;
    };
    for ( std::size_t u = 0; u < n; ++u )
        for ( std::size_t v = 0; v < n; ++v )
            if ( old( u, v ) )
                out.edges |= std::uint64_t{ 1 } << ( u * n + v );
    return out;
}

outcome bisimulation_sweep()
{
    std::size_t pairs = 0, mismatches = 0;
    std::vector< std::pair< KripkeModel, KripkeModel > > interesting;
    bool sampling = false;
    auto compare = [ & ]( const tiny& a, const tiny& b ) {
        KripkeModel ma = build( a ), mb = build( b );
        ++pairs;
        std::uint64_t got = engine_bisim( ma, mb );
        if ( got != oracle_bisim( a, b ) )
            ++mismatches;
        if ( sampling && got != 0 && interesting.size() < bisimilar_pairs_checked && pairs % 4 == 0 )
            interesting.emplace_back( std::move( ma ), std::move( mb ) );
    };
    auto all_of_size = [ & ]( std::size_t n, auto&& fn ) {
        for ( std::uint64_t e = 0; e < ( std::uint64_t{ 1 } << ( n * n ) ); ++e )
            for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << n ); ++v )
                fn( tiny{ n, e, v } );
    };
    // Exhaustive where the pair space is small enough.
    for ( auto [ n1, n2 ] : std::vector< std::pair< std::size_t, std::size_t > >{
              { 1, 1 }, { 1, 2 }, { 2, 1 }, { 1, 3 }, { 3, 1 }, { 2, 2 }, { 2, 3 }, { 3, 2 }, { 1, 4 }, { 4, 1 } } )
        all_of_size( n1, [ & ]( const tiny& a ) { all_of_size( n2, [ & ]( const tiny& b ) { compare( a, b ); } ); } );
    const std::size_t exhaustive = pairs;
    sampling = true;

    // Fixed-seed samples for the larger size pairs: half independent, half
    // with the second model grown from the first by duplicating worlds.
    rng_t rng{ 777 };
    auto random_tiny = [ & ]( std::size_t n ) {
        return tiny{ n, rng() & ( ( std::uint64_t{ 1 } << ( n * n ) ) - 1 ), rng() & ( ( std::uint64_t{ 1 } << n ) - 1 ) };
    };
    for ( auto [ n1, n2 ] : std::vector< std::pair< std::size_t, std::size_t > >{
              { 2, 4 }, { 4, 2 }, { 3, 3 }, { 3, 4 }, { 4, 3 } } )
        for ( std::size_t i = 0; i < bisim_samples; ++i )
        {
            tiny a = random_tiny( n1 );
            tiny b = random_tiny( n2 );
            if ( i % 2 == 1 && n2 >= n1 )
            {
                b = a;
                while ( b.n < n2 )
                    b = duplicate_world( b, pick( rng, b.n ) );
            }
            else if ( i % 2 == 1 )
            {
                a = b;
                while ( a.n < n1 )
                    a = duplicate_world( a, pick( rng, a.n ) );
            }
            compare( a, b );
        }

    // Formula agreement on bisimilar pairs.
    std::size_t related = 0, disagreements = 0;
    rng_t frng{ 99 };
    for ( const auto& [ a, b ] : interesting )
    {
        Evaluator ea{ a }, eb{ b };
        WorldRelation r = largest_bisimulation( a, b );
        auto ps = r.pairs();
        auto [ x, y ] = ps[ pick( frng, ps.size() ) ];
        ++related;
        for ( std::size_t k = 0; k < formulas_per_pair; ++k )
        {
            Formula f = random_formula( frng, 5, { "p" }, { "a" }, {}, 10 );
            if ( ea.at( x, f ) != eb.at( y, f ) )
                ++disagreements;
        }
    }
    return { mismatches == zero_tolerance && disagreements == zero_tolerance && related > 0,
             std::to_string( pairs ) + " model pairs (" + std::to_string( exhaustive ) + " exhaustive), "
                 + std::to_string( mismatches ) + " oracle mismatches; " + std::to_string( related )
                 + " bisimilar pairs x " + std::to_string( formulas_per_pair ) + " formulas, "
                 + std::to_string( disagreements ) + " disagreements" };
}

outcome proof_goldens()
{
    auto manifest = nlohmann::json::parse( read_text( data_path( "proofs/manifest.json" ) ) );
    std::size_t curated = 0, mutated = 0;
    std::vector< std::string > problems;
    for ( const auto& c : manifest )
    {
        std::vector< AgentId > agents = c.value( "agents", std::vector< std::string >{} );
        Proof p = load_proof_file( data_path( "proofs/" + c[ "file" ].get< std::string >() ), ParseOptions{ agents } );
        ProofSystem sys = make_system( c.value( "system", std::vector< std::string >{} ), c.value( "rule_mode", false ) );
        ProofVerdict v = check_proof( p, sys );
        const std::string file = c[ "file" ];
        if ( c[ "expect" ] == "accept" )
        {
            ++curated;
            if ( !v.accepted )
                problems.push_back( file + " rejected at line " + std::to_string( *v.failing_line ) + ": " + v.diagnosis );
        }
        else
        {
            ++mutated;
            const std::size_t line = c[ "line" ];
            const std::string failure = c[ "failure" ];
            if ( v.accepted )
                problems.push_back( file + " accepted" );
            else if ( *v.failing_line != line || to_string( v.failure ) != failure )
                problems.push_back( file + " rejected at line " + std::to_string( *v.failing_line ) + " ("
                                    + std::string( to_string( v.failure ) ) + "), expected line " + std::to_string( line )
                                    + " (" + failure + ")" );
        }
    }
    std::string detail = std::to_string( curated ) + " curated accepted, " + std::to_string( mutated )
                         + " mutated rejected at the intended line, " + std::to_string( problems.size() ) + " problems";
    for ( const auto& p : problems )
        detail += "; " + p;
    return { problems.empty() && curated >= min_curated && mutated >= min_mutated, detail };
}

std::string run_cli( const std::vector< std::string >& args, int& code )
{
    std::vector< const char* > argv{ "localmodal" };
    for ( const auto& a : args )
        argv.push_back( a.c_str() );
    std::ostringstream out, err;
    code = cli::run( static_cast< int >( argv.size() ), argv.data(), out, err );
    return out.str();
}

outcome roundtrip_determinism()
{
    std::vector< std::string > problems;
    rng_t rng{ 4242 };
    for ( std::size_t i = 0; i < roundtrip_formulas; ++i )
    {
        Formula f = random_formula( rng, 4, { "p", "q", "r" }, { "a", "b" }, { "tr", "euc" }, 12 );
        std::string text = print_formula( f );
        Formula g = parse_formula( text );
        if ( g != f || print_formula( g ) != text )
        {
            problems.push_back( "formula " + text );
            break;
        }
    }
    for ( const auto& entry : std::filesystem::directory_iterator( data_path( "models" ) ) )
    {
        std::string text = read_text( entry.path().string() );
        if ( save_model( load_model( text ) ) != text )
            problems.push_back( "golden model " + entry.path().filename().string() );
    }
    for ( std::size_t i = 0; i < roundtrip_models; ++i )
    {
        RandomModelParams p;
        p.worlds = 1 + pick( rng, 5 );
        p.agents = { "a", "b" };
        p.atoms = { "p", "q" };
        p.labels = { "tr" };
        KripkeModel m = random_model( rng(), p );
        std::string text = save_model( m );
        KripkeModel back = load_model( text );
        if ( !( back == m ) || save_model( back ) != text )
        {
            problems.push_back( "random model " + std::to_string( i ) );
            break;
        }
    }
    RandomModelParams gp;
    gp.worlds = 6;
    gp.labels = { "tr" };
    if ( save_model( random_model( 17, gp ) ) != save_model( random_model( 17, gp ) ) )
        problems.push_back( "random_model is not reproducible" );

    auto cases = nlohmann::json::parse( read_text( data_path( "cli/cases.json" ) ) );
    std::size_t invocations = 0;
    const std::string out_dir = std::filesystem::temp_directory_path().string();
    for ( const auto& c : cases )
    {
        std::vector< std::string > args;
        for ( std::string a : c[ "args" ] )
        {
            for ( const auto& [ key, value ] : { std::pair{ std::string( "@DATA@" ), std::string( LOCALMODAL_TEST_DATA ) },
                                                 std::pair{ std::string( "@OUT@" ), out_dir } } )
                if ( auto pos = a.find( key ); pos != std::string::npos )
                    a.replace( pos, key.size(), value );
            args.push_back( a );
        }
        int first = 0, second = 0;
        std::string o1 = run_cli( args, first );
        std::string o2 = run_cli( args, second );
        invocations += 2;
        if ( first != c[ "exit" ].get< int >() )
            problems.push_back( "cli " + c[ "name" ].get< std::string >() + " exited " + std::to_string( first ) );
        if ( first != second || o1 != o2 )
            problems.push_back( "cli " + c[ "name" ].get< std::string >() + " is not deterministic" );
    }
    std::string detail = std::to_string( roundtrip_formulas ) + " formulas, " + std::to_string( roundtrip_models )
                         + " random models and the golden models round-trip; " + std::to_string( invocations )
                         + " CLI invocations; " + std::to_string( problems.size() ) + " problems";
    for ( const auto& p : problems )
        detail += "; " + p;
    return { problems.empty(), detail };
}

} // namespace

int main( int argc, char** argv )
{
    for ( int i = 1; i < argc; ++i )
        selected.insert( std::stoi( argv[ i ] ) );
    report( 1, "correspondence sweep", correspondence_sweep );
    report( 2, "axiom soundness sweep", soundness_sweep );
    report( 3, "harmonization correctness", harmonization_sweep );
    report( 4, "anti-preservation", anti_preservation_sweep );
    report( 5, "interaction necessity", interaction_sweep );
    report( 6, "bisimulation engine", bisimulation_sweep );
    report( 7, "proof checker goldens", proof_goldens );
    report( 8, "round-trip and determinism", roundtrip_determinism );
    std::cout << ( failed == 0 ? "all criteria passed" : std::to_string( failed ) + " criteria failed" ) << std::endl;
    return static_cast< int >( failed );
}
