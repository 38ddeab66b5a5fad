#include "test_support.hpp"

#include "cli.hpp"

#include <localmodal/model_io.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>

using namespace localmodal;
using namespace localmodal::testing;

namespace
{

struct Run
{
    int code;
    std::string out, err;
};

Run run( std::vector< std::string > args )
{
    std::vector< const char* > argv{ "localmodal" };
    for ( const auto& a : args )
        argv.push_back( a.c_str() );
    std::ostringstream out, err;
    int code = cli::run( static_cast< int >( argv.size() ), argv.data(), out, err );
    return { code, out.str(), err.str() };
}

std::string model( const std::string& name ) { return data_path( "models/" + name + ".json" ); }

std::filesystem::path scratch( const std::string& name )
{
    auto dir = std::filesystem::temp_directory_path() / "localmodal_cli_test";
    std::filesystem::create_directories( dir );
    return dir / name;
}

} // namespace

TEST( Check, Verdicts )
{
    auto yes = run( { "check", model( "chain" ), "--at", "w", "--formula", "<a><a>T" } );
    EXPECT_EQ( yes.code, cli::verdict_true );
    EXPECT_EQ( yes.out, "true\n" );
    auto no = run( { "check", model( "chain" ), "--at", "w", "--formula", "[a]p -> [a][a]p" } );
    EXPECT_EQ( no.code, cli::verdict_false );
    EXPECT_EQ( no.out, "false\n" );
}

TEST( Check, Errors )
{
    EXPECT_EQ( run( { "check", model( "chain" ), "--at", "nowhere", "--formula", "p" } ).code, cli::failure );
    EXPECT_EQ( run( { "check", model( "chain" ), "--at", "w", "--formula", "p &" } ).code, cli::failure );
    EXPECT_EQ( run( { "check", "/nonexistent.json", "--at", "w", "--formula", "p" } ).code, cli::failure );
    EXPECT_EQ( run( { "check", data_path( "bad/malformed.json" ), "--at", "w", "--formula", "p" } ).code,
               cli::failure );
    EXPECT_EQ( run( { "frobnicate" } ).code, cli::failure );
    EXPECT_EQ( run( {} ).code, cli::failure );
    auto err = run( { "check", model( "chain" ), "--at", "nowhere", "--formula", "p" } ).err;
    EXPECT_NE( err.find( "nowhere" ), std::string::npos );
}

TEST( Check, Structured )
{
    auto r = run( { "--format", "structured", "check", model( "two_agents" ), "--at", "s", "--formula", "[b]p" } );
    ASSERT_EQ( r.code, 0 );
    auto j = nlohmann::json::parse( r.out );
    EXPECT_EQ( j[ "command" ], "check" );
    EXPECT_EQ( j[ "result" ], true );
    EXPECT_EQ( j[ "world" ], "s" );
}

TEST( Harmonize, WritesModelAndMetadata )
{
    auto out = scratch( "chain_h.json" ).string();
    std::filesystem::remove( out );
    std::filesystem::remove( out + ".meta.json" );
    auto r = run( { "--format", "structured", "harmonize", model( "chain" ), "--point", "w", "--props", "tr", "--depth",
                    "3", "--out", out } );
    ASSERT_EQ( r.code, 0 ) << r.err;
    auto j = nlohmann::json::parse( r.out );
    EXPECT_EQ( j[ "accepted" ], true );
    EXPECT_EQ( j[ "verified" ], true );
    EXPECT_EQ( j[ "depth" ], 3 );
    KripkeModel h = load_model_file( out );
    EXPECT_EQ( h.world_count(), j[ "worlds" ].get< std::size_t >() );
    auto meta = nlohmann::json::parse( read_text( out + ".meta.json" ) );
    EXPECT_TRUE( meta.is_object() );
}

TEST( Harmonize, RejectsNonNiceInput )
{
    auto out = scratch( "not_nice_h.json" ).string();
    auto r = run( { "harmonize", model( "not_nice" ), "--point", "w", "--props", "tr", "--depth", "3", "--out", out } );
    EXPECT_EQ( r.code, cli::verdict_false );
    EXPECT_EQ( r.out.rfind( "rejected", 0 ), 0U );
    auto low = run( { "harmonize", model( "chain" ), "--point", "w", "--props", "tr", "--depth", "1", "--out", out } );
    EXPECT_EQ( low.code, cli::failure );
}

TEST( Harmonize, InteractionCheck )
{
    auto out = scratch( "euc_ref_h.json" ).string();
    std::vector< std::string > base{ "harmonize", model( "euc_ref_broken" ), "--point", "w", "--props", "euc,ref",
                                    "--depth", "2", "--out", out };
    EXPECT_EQ( run( base ).code, cli::verdict_false );
    base.push_back( "--skip-interaction-check" );
    EXPECT_NE( run( base ).code, cli::failure );
}

TEST( Prove, Verdicts )
{
    auto ok = run( { "prove", data_path( "proofs/c03_tr.jsonl" ), "--system", "tr" } );
    EXPECT_EQ( ok.code, 0 ) << ok.out;
    auto bad = run( { "--format", "structured", "prove", data_path( "proofs/c03_tr.jsonl" ) } );
    EXPECT_EQ( bad.code, 1 );
    auto j = nlohmann::json::parse( bad.out );
    EXPECT_EQ( j[ "accepted" ], false );
    EXPECT_EQ( j[ "failure" ], "not enabled" );
}

TEST( Bisim, PointsAndPairs )
{
    EXPECT_EQ( run( { "bisim", model( "loop" ), model( "two_loops" ), "--p1", "u", "--p2", "v0" } ).code, 1 );
    EXPECT_EQ( run( { "bisim", model( "loop" ), model( "two_loops" ), "--p1", "u", "--p2", "v0", "--ignore-theta" } )
                   .code,
               0 );
    EXPECT_EQ( run( { "bisim", model( "loop" ), model( "two_loops" ), "--p1", "u" } ).code, cli::failure );
    auto pairs = run( { "bisim", model( "loop" ), model( "two_loops" ), "--ignore-theta" } );
    EXPECT_EQ( pairs.out, "u v0\nu v1\n" );
}

TEST( Harmony, Reports )
{
    EXPECT_EQ( run( { "harmony", model( "chain" ), "--props", "tr" } ).code, 0 );
    EXPECT_EQ( run( { "harmony", model( "not_nice" ), "--props", "tr", "--nice" } ).code, 1 );
    EXPECT_EQ( run( { "harmony", model( "chain" ), "--props", "nope" } ).code, cli::failure );
}

TEST( Countermodel, ExitsOneWhenFound )
{
    auto out = scratch( "cm.json" ).string();
    auto r = run( { "countermodel", "--formula", "[a]p -> [a][a]p", "--out", out } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( load_model_file( out ).world_count(), 2U );
    EXPECT_EQ( run( { "countermodel", "--formula", "[a](p & q) -> [a]p" } ).code, 0 );
}

TEST( Gen, Deterministic )
{
    auto a = run( { "gen", "--seed", "5", "--worlds", "4" } );
    auto b = run( { "gen", "--seed", "5", "--worlds", "4" } );
    ASSERT_EQ( a.code, 0 );
    EXPECT_EQ( a.out, b.out );
    EXPECT_NO_THROW( (void)load_model( a.out ) );
}
