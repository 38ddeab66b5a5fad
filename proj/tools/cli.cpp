#include "cli.hpp"

#include <localmodal/bisim.hpp>
#include <localmodal/error.hpp>
#include <localmodal/harmony.hpp>
#include <localmodal/model_io.hpp>
#include <localmodal/parse.hpp>
#include <localmodal/print.hpp>
#include <localmodal/proofs.hpp>
#include <localmodal/search.hpp>
#include <localmodal/semantics.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace localmodal::cli
{

namespace
{

using json = nlohmann::ordered_json;

enum class format
{
    text,
    structured
};

struct io
{
    std::ostream& out;
    std::ostream& err;
    format fmt = format::text;

    void emit( const json& j ) const { out << j.dump( 2 ) << "\n"; }
};

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw Error( "cannot open '" + path + "'" );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file( const std::string& path, const std::string& text )
{
    std::ofstream out{ path, std::ios::binary };
    if ( !out )
        throw Error( "cannot write '" + path + "'" );
    out << text;
}

ParseOptions options_for( const KripkeModel& m ) { return ParseOptions{ m.frame().agents() }; }

AgentId default_agent( const KripkeModel* m )
{
    if ( m && m->frame().agent_count() == 1 )
        return m->frame().agents().front();
    return "a";
}

// Built-in labels, or `label=file` for a property read from a file.
std::vector< PropertySpec > resolve_props( const std::vector< std::string >& items, const KripkeModel* m )
{
    std::vector< PropertySpec > out;
    for ( const auto& item : items )
    {
        auto eq = item.find( '=' );
        if ( eq == std::string::npos )
        {
            out.push_back( builtin( item, default_agent( m ) ) );
            continue;
        }
        std::string label = item.substr( 0, eq );
        if ( !is_label_token( label ) )
            throw ArgumentError( "invalid property label '" + label + "'" );
        ParseOptions opts = m ? options_for( *m ) : ParseOptions{};
        out.push_back( custom_property( label, parse_property( read_file( item.substr( eq + 1 ) ), opts ) ) );
    }
    return out;
}

json model_json( const KripkeModel& m ) { return json::parse( save_model( m ) ); }

json world_list( const KripkeModel& m, const std::vector< WorldIndex >& ws )
{
    json a = json::array();
    for ( WorldIndex w : ws )
        a.push_back( m.world( w ) );
    return a;
}

std::string joined( const KripkeModel& m, const std::vector< WorldIndex >& ws )
{
    std::string s;
    for ( WorldIndex w : ws )
        s += ( s.empty() ? "" : ", " ) + m.world( w );
    return s;
}

int verdict( bool b ) { return b ? verdict_true : verdict_false; }

struct check_args
{
    std::string model, at, formula;
};

int run_check( const check_args& a, const io& o )
{
    KripkeModel m = load_model_file( a.model );
    Formula f = parse_formula( a.formula, options_for( m ) );
    check_vocabulary( m, f );
    bool result = satisfies( PointedModel{ m, a.at }, f );
    if ( o.fmt == format::structured )
        o.emit( { { "command", "check" }, { "world", a.at }, { "formula", print_formula( f ) }, { "result", result } } );
    else
        o.out << ( result ? "true" : "false" ) << "\n";
    return verdict( result );
}

struct harmonize_args
{
    std::string model, point, out;
    std::vector< std::string > props;
    std::size_t depth = 0;
    bool skip_interaction = false;
};

int run_harmonize( const harmonize_args& a, const io& o )
{
    KripkeModel m = load_model_file( a.model );
    auto specs = resolve_props( a.props, &m );
    PointedModel pm{ m, a.point };
    HarmonizationReport r;
    try
    {
        r = harmonize( pm, specs, a.depth, HarmonizeOptions{ .check_interaction = !a.skip_interaction } );
    }
    catch ( const PreconditionError& e )
    {
        if ( o.fmt == format::structured )
            o.emit( { { "command", "harmonize" }, { "accepted", false }, { "reason", e.what() }, { "worlds", e.worlds() } } );
        else
            o.out << "rejected: " << e.what() << "\n";
        return verdict_false;
    }
    write_file( a.out, save_model( r.result ) );
    write_file( a.out + ".meta.json", report_metadata( m, r ) );

    Verification v = verify_report( pm, r, specs, standard_battery( m, r.interior_radius ) );
    auto count = [ &v ]( const char* tag ) {
        return std::count_if( v.failures.begin(), v.failures.end(),
                              [ tag ]( const std::string& s ) { return s.starts_with( tag ); } );
    };
    if ( o.fmt == format::structured )
    {
        o.emit( { { "command", "harmonize" },
                  { "accepted", true },
                  { "verified", v.ok() },
                  { "worlds", r.result.world_count() },
                  { "depth", r.depth },
                  { "interior_radius", r.interior_radius },
                  { "iterations", r.iterations },
                  { "edges_added", r.edges_added },
                  { "worlds_copied", r.worlds_copied },
                  { "edges_checked", v.edges_checked },
                  { "worlds_checked", v.worlds_checked },
                  { "formulas_checked", v.formulas_checked },
                  { "failures", v.failures } } );
    }
    else
    {
        o.out << "worlds: " << r.result.world_count() << ", iterations: " << r.iterations
              << ", edges added: " << r.edges_added << ", worlds copied: " << r.worlds_copied << "\n";
        o.out << "G1 projection: " << ( count( "G1" ) ? "FAIL" : "ok" ) << " (" << v.edges_checked << " edges)\n";
        o.out << "G2 interior harmony: " << ( count( "G2" ) ? "FAIL" : "ok" ) << " (" << v.worlds_checked
              << " worlds)\n";
        o.out << "G3 bounded agreement: " << ( count( "G3" ) ? "FAIL" : "ok" ) << " (" << v.formulas_checked
              << " formulas, radius " << r.interior_radius << ")\n";
        for ( const auto& f : v.failures )
            o.out << "  " << f << "\n";
    }
    return verdict( v.ok() );
}

struct prove_args
{
    std::string proof;
    std::vector< std::string > system, agents;
    bool rule_mode = false;
};

int run_prove( const prove_args& a, const io& o )
{
    ParseOptions opts{ a.agents };
    Proof p = load_proof_file( a.proof, opts );
    AgentId agent = a.agents.size() == 1 ? a.agents.front() : "a";
    ProofSystem sys = make_system( a.system, a.rule_mode, agent );
    ProofVerdict v = check_proof( p, sys );
    if ( o.fmt == format::structured )
    {
        json j{ { "command", "prove" }, { "accepted", v.accepted }, { "lines", p.lines.size() } };
        if ( !v.accepted )
        {
            j[ "failing_line" ] = *v.failing_line;
            j[ "failure" ] = std::string( to_string( v.failure ) );
            j[ "diagnosis" ] = v.diagnosis;
        }
        o.emit( j );
    }
    else if ( v.accepted )
        o.out << "accepted (" << p.lines.size() << " lines)\n";
    else
        o.out << "rejected at line " << *v.failing_line << ": " << to_string( v.failure ) << ": " << v.diagnosis
              << "\n";
    return verdict( v.accepted );
}

struct bisim_args
{
    std::string left, right, p1, p2;
    std::optional< std::size_t > depth;
    bool ignore_theta = false;
};

int run_bisim( const bisim_args& a, const io& o )
{
    KripkeModel m1 = load_model_file( a.left );
    KripkeModel m2 = load_model_file( a.right );
    BisimOptions opts{ a.ignore_theta };
    if ( a.p1.empty() != a.p2.empty() )
        throw ArgumentError( "give both --p1 and --p2 or neither" );
    WorldRelation rel = a.depth ? d_bisimulation( m1, m2, *a.depth, opts ) : largest_bisimulation( m1, m2, opts );
    if ( !a.p1.empty() )
    {
        bool result = rel.contains( m1.world_index( a.p1 ), m2.world_index( a.p2 ) );
        if ( o.fmt == format::structured )
            o.emit( { { "command", "bisim" }, { "p1", a.p1 }, { "p2", a.p2 }, { "bisimilar", result } } );
        else
            o.out << ( result ? "true" : "false" ) << "\n";
        return verdict( result );
    }
    auto pairs = relation_ids( m1, m2, rel );
    if ( o.fmt == format::structured )
    {
        json arr = json::array();
        for ( const auto& [ x, y ] : pairs )
            arr.push_back( { x, y } );
        o.emit( { { "command", "bisim" }, { "pairs", arr } } );
    }
    else
        for ( const auto& [ x, y ] : pairs )
            o.out << x << " " << y << "\n";
    return verdict_true;
}

struct harmony_args
{
    std::string model;
    std::vector< std::string > props;
    bool nice = false;
};

int run_harmony( const harmony_args& a, const io& o )
{
    KripkeModel m = load_model_file( a.model );
    auto specs = resolve_props( a.props, &m );
    bool all = true;
    json results = json::array();
    for ( const auto& spec : specs )
    {
        if ( a.nice )
        {
            NicenessCheck c = is_nice( m, spec );
            all = all && c.holds;
            results.push_back( { { "label", spec.label },
                                 { "nice", c.holds },
                                 { "property_failures", world_list( m, c.property_failures ) },
                                 { "guard_failures", world_list( m, c.guard_failures ) } } );
            if ( o.fmt == format::text )
            {
                o.out << spec.label << ": " << ( c.holds ? "nice" : "not nice" );
                if ( !c.property_failures.empty() )
                    o.out << "; property fails in Delta at: " << joined( m, c.property_failures );
                if ( !c.guard_failures.empty() )
                    o.out << "; guard holds outside Delta at: " << joined( m, c.guard_failures );
                o.out << "\n";
            }
            continue;
        }
        HarmonyCheck c = is_harmonious( m, spec );
        all = all && c.holds;
        results.push_back( { { "label", spec.label },
                             { "harmonious", c.holds },
                             { "missing", world_list( m, c.missing ) },
                             { "spurious", world_list( m, c.spurious ) } } );
        if ( o.fmt == format::text )
        {
            o.out << spec.label << ": " << ( c.holds ? "harmonious" : "not harmonious" );
            if ( !c.missing.empty() )
                o.out << "; holds outside Delta at: " << joined( m, c.missing );
            if ( !c.spurious.empty() )
                o.out << "; fails in Delta at: " << joined( m, c.spurious );
            o.out << "\n";
        }
    }
    if ( o.fmt == format::structured )
        o.emit( { { "command", "harmony" }, { "holds", all }, { "results", results } } );
    return verdict( all );
}

struct countermodel_args
{
    std::string formula, out;
    std::vector< std::string > props;
    bool harmony = false;
    std::size_t max_worlds = 3;
    double cap = 1 << 20;
};

int run_countermodel( const countermodel_args& a, const io& o )
{
    Formula f = parse_formula( a.formula );
    auto specs = resolve_props( a.props, nullptr );
    auto found = find_countermodel( f, specs, a.harmony, SearchCaps{ a.max_worlds, a.cap } );
    if ( found && !a.out.empty() )
        write_file( a.out, save_model( found->model ) );
    if ( o.fmt == format::structured )
    {
        json j{ { "command", "countermodel" }, { "formula", print_formula( f ) }, { "found", found.has_value() } };
        if ( found )
        {
            j[ "point" ] = found->model.world( found->point );
            j[ "model" ] = model_json( found->model );
        }
        o.emit( j );
    }
    else if ( !found )
        o.out << "no countermodel within " << a.max_worlds << " worlds\n";
    else
    {
        o.out << "countermodel at " << found->model.world( found->point ) << "\n";
        if ( a.out.empty() )
            o.out << save_model( found->model );
    }
    return found ? verdict_false : verdict_true;
}

struct gen_args
{
    std::uint64_t seed = 0;
    RandomModelParams params;
    std::vector< std::string > nice;
    std::string out;
};

int run_gen( gen_args a, const io& o )
{
    std::vector< PropertySpec > specs;
    for ( const auto& l : a.nice )
        specs.push_back( builtin( l, a.params.agents.size() == 1 ? a.params.agents.front() : "a" ) );
    KripkeModel m = specs.empty() ? random_model( a.seed, a.params ) : random_nice_model( a.seed, a.params, specs );
    if ( !a.out.empty() )
        write_file( a.out, save_model( m ) );
    if ( o.fmt == format::structured )
        o.emit( { { "command", "gen" }, { "seed", a.seed }, { "model", model_json( m ) } } );
    else if ( a.out.empty() )
        o.out << save_model( m );
    else
        o.out << "wrote " << a.out << "\n";
    return verdict_true;
}

} // namespace

int run( int argc, const char* const* argv, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Modal logic with local frame properties", "localmodal" };
    app.require_subcommand( 1 );
    app.fallthrough();
    std::string fmt = "text";
    app.add_option( "--format", fmt, "Output format" )
        ->check( CLI::IsMember( { "text", "structured" } ) )
        ->capture_default_str();

    check_args ca;
    auto* check = app.add_subcommand( "check", "Evaluate a formula at a world" );
    check->add_option( "model", ca.model, "Model file" )->required();
    check->add_option( "--at", ca.at, "World" )->required();
    check->add_option( "--formula", ca.formula, "Formula" )->required();

    harmonize_args ha;
    auto* harm = app.add_subcommand( "harmonize", "Unravel and complete a nice model" );
    harm->add_option( "model", ha.model, "Model file" )->required();
    harm->add_option( "--point", ha.point, "Root world" )->required();
    harm->add_option( "--props", ha.props, "Property labels" )->required()->delimiter( ',' );
    harm->add_option( "--depth", ha.depth, "Unravelling depth" )->required();
    harm->add_option( "--out", ha.out, "Output model file" )->required();
    harm->add_flag( "--skip-interaction-check", ha.skip_interaction,
                    "Do not require euclidean successors to lie in the reflexive extension" );

    prove_args pa;
    auto* prove = app.add_subcommand( "prove", "Check a proof" );
    prove->add_option( "proof", pa.proof, "Proof file (JSON lines)" )->required();
    prove->add_option( "--system", pa.system, "Enabled property labels" )->delimiter( ',' );
    prove->add_option( "--agents", pa.agents, "Declared agents" )->delimiter( ',' );
    prove->add_flag( "--rule-mode", pa.rule_mode, "Admit the introduction rule" );

    bisim_args ba;
    std::size_t bdepth = 0;
    auto* bis = app.add_subcommand( "bisim", "Largest or bounded bisimulation between two models" );
    bis->add_option( "left", ba.left, "First model file" )->required();
    bis->add_option( "right", ba.right, "Second model file" )->required();
    bis->add_option( "--p1", ba.p1, "Point in the first model" );
    bis->add_option( "--p2", ba.p2, "Point in the second model" );
    auto* bdepth_opt = bis->add_option( "--depth", bdepth, "Bounded bisimilarity depth" );
    bis->add_flag( "--ignore-theta", ba.ignore_theta, "Ignore theta extensions" );

    harmony_args hya;
    auto* hy = app.add_subcommand( "harmony", "Check harmony or niceness" );
    hy->add_option( "model", hya.model, "Model file" )->required();
    hy->add_option( "--props", hya.props, "Labels, or label=file for a custom property" )
        ->required()
        ->delimiter( ',' );
    hy->add_flag( "--nice", hya.nice, "Check niceness instead of harmony" );

    countermodel_args cma;
    auto* cm = app.add_subcommand( "countermodel", "Search small models for a countermodel" );
    cm->add_option( "--formula", cma.formula, "Formula" )->required();
    cm->add_option( "--props", cma.props, "Property labels" )->delimiter( ',' );
    cm->add_flag( "--harmony", cma.harmony, "Only harmonious models for the properties" );
    cm->add_option( "--max-worlds", cma.max_worlds, "Largest model size" )->capture_default_str();
    cm->add_option( "--cap", cma.cap, "Most models to try" )->capture_default_str();
    cm->add_option( "--out", cma.out, "Write the countermodel here" );

    gen_args ga;
    auto* gen = app.add_subcommand( "gen", "Generate a random model" );
    gen->add_option( "--seed", ga.seed, "Seed" )->required();
    gen->add_option( "--worlds", ga.params.worlds, "Worlds" )->capture_default_str();
    gen->add_option( "--agents", ga.params.agents, "Agents" )->delimiter( ',' );
    gen->add_option( "--atoms", ga.params.atoms, "Atoms" )->delimiter( ',' );
    gen->add_option( "--labels", ga.params.labels, "Theta labels" )->delimiter( ',' );
    gen->add_option( "--edge-density", ga.params.edge_density, "Edge probability" )->capture_default_str();
    gen->add_option( "--delta-density", ga.params.delta_density, "Delta probability" )->capture_default_str();
    gen->add_option( "--valuation-density", ga.params.valuation_density, "Atom probability" )
        ->capture_default_str();
    gen->add_option( "--nice", ga.nice, "Make the model nice for these built-ins" )->delimiter( ',' );
    gen->add_option( "--out", ga.out, "Output file" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        int code = app.exit( e, out, err );
        return code == 0 ? verdict_true : failure;
    }

    io o{ out, err, fmt == "structured" ? format::structured : format::text };
    try
    {
        if ( *check )
            return run_check( ca, o );
        if ( *harm )
            return run_harmonize( ha, o );
        if ( *prove )
            return run_prove( pa, o );
        if ( *bis )
        {
            if ( *bdepth_opt )
                ba.depth = bdepth;
            return run_bisim( ba, o );
        }
        if ( *hy )
            return run_harmony( hya, o );
        if ( *cm )
            return run_countermodel( cma, o );
        if ( *gen )
            return run_gen( ga, o );
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << "\n";
        return failure;
    }
    return failure;
}

} // namespace localmodal::cli
