#include "localmodal/error.hpp"
#include "localmodal/print.hpp"
#include "localmodal/proofs.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace localmodal
{

namespace
{

using json = nlohmann::json;

Formula formula_field( const json& v, const std::string& path, const ParseOptions& options )
{
    if ( !v.is_string() )
        throw ValidationError( path, "expected a formula string" );
    try
    {
        return parse_formula( v.get< std::string >(), options );
    }
    catch ( const ParseError& e )
    {
        throw ValidationError( path, e.what() );
    }
}

std::string string_field( const json& v, const std::string& path )
{
    if ( !v.is_string() || v.get< std::string >().empty() )
        throw ValidationError( path, "expected a nonempty string" );
    return v.get< std::string >();
}

const json& array_field( const json& v, const std::string& path )
{
    if ( !v.is_array() )
        throw ValidationError( path, "expected an array" );
    return v;
}

ProofLine parse_line( const json& j, const std::string& where, const ParseOptions& options )
{
    if ( !j.is_object() )
        throw ValidationError( where, "expected an object" );
    static const std::set< std::string > known{ "formula", "rule", "refs", "args", "agent", "pseudo", "fresh" };
    for ( const auto& [ key, value ] : j.items() )
        if ( !known.contains( key ) )
            throw ValidationError( where + "." + key, "unknown key" );
    for ( const char* key : { "formula", "rule" } )
        if ( !j.contains( key ) )
            throw ValidationError( where, std::string( "missing key '" ) + key + "'" );

    ProofLine line{ .formula = formula_field( j[ "formula" ], where + ".formula", options ),
                    .rule = Rule::taut,
                    .refs = {},
                    .args = {},
                    .agent = std::nullopt,
                    .pseudo = {},
                    .fresh = {} };
    try
    {
        line.rule = parse_rule( string_field( j[ "rule" ], where + ".rule" ) );
    }
    catch ( const LookupError& e )
    {
        throw ValidationError( where + ".rule", e.what() );
    }
    if ( j.contains( "refs" ) )
    {
        const json& refs = array_field( j[ "refs" ], where + ".refs" );
        for ( std::size_t k = 0; k < refs.size(); ++k )
        {
            if ( !refs[ k ].is_number_integer() )
                throw ValidationError( where + ".refs[" + std::to_string( k ) + "]", "expected an integer" );
            auto r = refs[ k ].get< long long >();
            line.refs.push_back( r < 0 ? 0 : static_cast< std::size_t >( r ) );
        }
    }
    if ( j.contains( "args" ) )
    {
        const json& args = array_field( j[ "args" ], where + ".args" );
        for ( std::size_t k = 0; k < args.size(); ++k )
            line.args.push_back( formula_field( args[ k ], where + ".args[" + std::to_string( k ) + "]", options ) );
    }
    if ( j.contains( "agent" ) )
        line.agent = string_field( j[ "agent" ], where + ".agent" );
    if ( j.contains( "pseudo" ) )
    {
        const json& steps = array_field( j[ "pseudo" ], where + ".pseudo" );
        for ( std::size_t k = 0; k < steps.size(); ++k )
        {
            std::string p = where + ".pseudo[" + std::to_string( k ) + "]";
            if ( !steps[ k ].is_array() || steps[ k ].size() != 2 )
                throw ValidationError( p, "expected [agent, guard]" );
            line.pseudo.push_back( { string_field( steps[ k ][ 0 ], p + "[0]" ),
                                     formula_field( steps[ k ][ 1 ], p + "[1]", options ) } );
        }
    }
    if ( j.contains( "fresh" ) )
    {
        const json& fresh = array_field( j[ "fresh" ], where + ".fresh" );
        for ( std::size_t k = 0; k < fresh.size(); ++k )
            line.fresh.push_back( string_field( fresh[ k ], where + ".fresh[" + std::to_string( k ) + "]" ) );
    }
    return line;
}

} // namespace

Proof load_proof( std::string_view text, const ParseOptions& options )
{
    Proof proof;
    std::istringstream in{ std::string( text ) };
    std::string raw;
    std::size_t physical = 0;
    while ( std::getline( in, raw ) )
    {
        ++physical;
        if ( raw.find_first_not_of( " \t\r" ) == std::string::npos )
            continue;
        const std::string where = "line " + std::to_string( physical );
        json j;
        try
        {
            j = json::parse( raw );
        }
        catch ( const json::parse_error& e )
        {
            throw ValidationError( where, std::string( "invalid JSON: " ) + e.what() );
        }
        proof.lines.push_back( parse_line( j, where, options ) );
    }
    return proof;
}

Proof load_proof_file( const std::string& path, const ParseOptions& options )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw Error( "cannot open '" + path + "'" );
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_proof( ss.str(), options );
}

std::string save_proof( const Proof& p )
{
    std::string out;
    for ( const auto& l : p.lines )
    {
        nlohmann::ordered_json j;
        j[ "formula" ] = print_formula( l.formula );
        j[ "rule" ] = std::string( to_string( l.rule ) );
        j[ "refs" ] = l.refs;
        j[ "args" ] = nlohmann::ordered_json::array();
        for ( const auto& a : l.args )
            j[ "args" ].push_back( print_formula( a ) );
        if ( l.agent )
            j[ "agent" ] = *l.agent;
        if ( !l.pseudo.empty() )
        {
            j[ "pseudo" ] = nlohmann::ordered_json::array();
            for ( const auto& s : l.pseudo )
                j[ "pseudo" ].push_back( { s.agent, print_formula( s.guard ) } );
        }
        if ( !l.fresh.empty() )
            j[ "fresh" ] = l.fresh;
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace localmodal
