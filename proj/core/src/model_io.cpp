#include "localmodal/model_io.hpp"

#include "localmodal/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace localmodal
{

using nlohmann::json;

namespace
{

bool word_chars( std::string_view s )
{
    return !s.empty() && std::all_of( s.begin(), s.end(), []( unsigned char c ) {
        return std::isalnum( c ) != 0 || c == '_';
    } );
}

const json& require_array( const json& j, const std::string& path )
{
    if ( !j.is_array() )
        throw ValidationError( path, "expected an array" );
    return j;
}

const json& require_object( const json& j, const std::string& path )
{
    if ( !j.is_object() )
        throw ValidationError( path, "expected an object" );
    return j;
}

const std::string& require_string( const json& j, const std::string& path )
{
    if ( !j.is_string() )
        throw ValidationError( path, "expected a string" );
    return j.get_ref< const std::string& >();
}

WorldIndex require_world( const KripkeModel& m, const json& j, const std::string& path )
{
    const std::string& id = require_string( j, path );
    auto w = m.frame().find_world( id );
    if ( !w )
        throw ValidationError( path, "undeclared world '" + id + "'" );
    return *w;
}

WorldSet read_world_list( const KripkeModel& m, const json& j, const std::string& path )
{
    WorldSet s = m.empty_set();
    require_array( j, path );
    for ( std::size_t i = 0; i < j.size(); ++i )
        s.set( require_world( m, j[ i ], path + "[" + std::to_string( i ) + "]" ) );
    return s;
}

std::string quote( const std::string& s ) { return json( s ).dump(); }

std::string world_list( const Frame& f, const WorldSet& s )
{
    std::string out = "[";
    bool first = true;
    for ( auto w = s.find_first(); w != WorldSet::npos; w = s.find_next( w ) )
    {
        out += ( first ? "" : ", " ) + quote( f.world( w ) );
        first = false;
    }
    return out + "]";
}

void write_sets( std::ostringstream& out, const Frame& f, const std::map< std::string, WorldSet >& sets )
{
    if ( sets.empty() )
    {
        out << "{}";
        return;
    }
    out << "{";
    bool first = true;
    for ( const auto& [ name, s ] : sets )
    {
        out << ( first ? "\n" : ",\n" ) << "    " << quote( name ) << ": " << world_list( f, s );
        first = false;
    }
    out << "\n  }";
}

} // namespace

bool is_agent_token( std::string_view s ) { return word_chars( s ); }

bool is_atom_token( std::string_view s )
{
    return word_chars( s ) && ( std::isalpha( static_cast< unsigned char >( s[ 0 ] ) ) != 0 || s[ 0 ] == '_' )
           && s != "T" && s != "F" && !s.starts_with( "theta_" );
}

bool is_label_token( std::string_view s ) { return word_chars( s ); }

KripkeModel load_model( std::string_view json_text )
{
    json doc;
    try
    {
        doc = json::parse( json_text );
    }
    catch ( const json::parse_error& e )
    {
        throw ValidationError( "", std::string( "malformed JSON: " ) + e.what() );
    }
    require_object( doc, "<root>" );
    static const std::vector< std::string > known{ "worlds", "agents", "relations", "theta", "valuation" };
    for ( const auto& [ key, _ ] : doc.items() )
        if ( std::find( known.begin(), known.end(), key ) == known.end() )
            throw ValidationError( key, "unknown key" );
    if ( !doc.contains( "worlds" ) )
        throw ValidationError( "worlds", "missing required key" );

    KripkeModel m;
    const json& worlds = require_array( doc[ "worlds" ], "worlds" );
    if ( worlds.empty() )
        throw ValidationError( "worlds", "a model needs at least one world" );
    for ( std::size_t i = 0; i < worlds.size(); ++i )
    {
        std::string path = "worlds[" + std::to_string( i ) + "]";
        const std::string& id = require_string( worlds[ i ], path );
        if ( id.empty() )
            throw ValidationError( path, "world ids must be nonempty" );
        if ( m.frame().find_world( id ) )
            throw ValidationError( path, "duplicate world id '" + id + "'" );
        m.add_world( id );
    }

    if ( doc.contains( "agents" ) )
    {
        const json& agents = require_array( doc[ "agents" ], "agents" );
        for ( std::size_t i = 0; i < agents.size(); ++i )
        {
            std::string path = "agents[" + std::to_string( i ) + "]";
            const std::string& a = require_string( agents[ i ], path );
            if ( !is_agent_token( a ) )
                throw ValidationError( path, "invalid agent token '" + a + "'" );
            if ( m.frame().find_agent( a ) )
                throw ValidationError( path, "duplicate agent '" + a + "'" );
            m.frame().add_agent( a );
        }
    }

    if ( doc.contains( "relations" ) )
    {
        const json& rel = require_object( doc[ "relations" ], "relations" );
        for ( const auto& [ agent, edges ] : rel.items() )
        {
            std::string path = "relations." + agent;
            auto a = m.frame().find_agent( agent );
            if ( !a )
                throw ValidationError( path, "undeclared agent '" + agent + "'" );
            require_array( edges, path );
            for ( std::size_t i = 0; i < edges.size(); ++i )
            {
                std::string edge_path = path + "[" + std::to_string( i ) + "]";
                const json& e = edges[ i ];
                if ( !e.is_array() || e.size() != 2 )
                    throw ValidationError( edge_path, "an edge is a [from, to] pair" );
                WorldIndex from = require_world( m, e[ 0 ], edge_path + "[0]" );
                WorldIndex to = require_world( m, e[ 1 ], edge_path + "[1]" );
                m.frame().add_edge( *a, from, to );
            }
        }
    }

    if ( doc.contains( "theta" ) )
    {
        const json& theta = require_object( doc[ "theta" ], "theta" );
        for ( const auto& [ label, worlds_of ] : theta.items() )
        {
            std::string path = "theta." + label;
            if ( !is_label_token( label ) )
                throw ValidationError( path, "invalid theta label" );
            m.set_extension( label, read_world_list( m, worlds_of, path ) );
        }
    }

    if ( doc.contains( "valuation" ) )
    {
        const json& val = require_object( doc[ "valuation" ], "valuation" );
        for ( const auto& [ atom, worlds_of ] : val.items() )
        {
            std::string path = "valuation." + atom;
            if ( !is_atom_token( atom ) )
                throw ValidationError( path, "invalid atom name" );
            m.set_valuation( atom, read_world_list( m, worlds_of, path ) );
        }
    }
    return m;
}

std::string save_model( const KripkeModel& m )
{
    const Frame& f = m.frame();
    std::ostringstream out;
    out << "{\n  \"worlds\": [";
    for ( WorldIndex w = 0; w < f.world_count(); ++w )
        out << ( w ? ", " : "" ) << quote( f.world( w ) );
    out << "],\n  \"agents\": [";
    for ( AgentIndex a = 0; a < f.agent_count(); ++a )
        out << ( a ? ", " : "" ) << quote( f.agents()[ a ] );
    out << "],\n  \"relations\": {";
    for ( AgentIndex a = 0; a < f.agent_count(); ++a )
    {
        out << ( a ? ",\n" : "\n" ) << "    " << quote( f.agents()[ a ] ) << ": [";
        bool first = true;
        for ( WorldIndex w = 0; w < f.world_count(); ++w )
            for ( WorldIndex v : f.successors( a, w ) )
            {
                out << ( first ? "" : ", " ) << "[" << quote( f.world( w ) ) << ", " << quote( f.world( v ) ) << "]";
                first = false;
            }
        out << "]";
    }
    out << ( f.agent_count() ? "\n  }" : "}" ) << ",\n  \"theta\": ";
    write_sets( out, f, m.extensions() );
    out << ",\n  \"valuation\": ";
    write_sets( out, f, m.valuation() );
    out << "\n}\n";
    return out.str();
}

KripkeModel load_model_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw ValidationError( path, "cannot open model file" );
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_model( buffer.str() );
}

void save_model_file( const KripkeModel& m, const std::string& path )
{
    std::ofstream out( path, std::ios::binary );
    if ( !out )
        throw ValidationError( path, "cannot write model file" );
    out << save_model( m );
}

} // namespace localmodal
