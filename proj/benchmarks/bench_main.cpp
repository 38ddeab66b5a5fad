#include <localmodal/bisim.hpp>
#include <localmodal/harmony.hpp>
#include <localmodal/parse.hpp>
#include <localmodal/search.hpp>
#include <localmodal/semantics.hpp>

#include <benchmark/benchmark.h>

using namespace localmodal;

namespace
{

KripkeModel sample( std::size_t worlds, std::uint64_t seed )
{
    RandomModelParams p;
    p.worlds = worlds;
    p.atoms = { "p", "q" };
    p.edge_density = 0.3;
    return random_model( seed, p );
}

void BM_Evaluate( benchmark::State& state )
{
    KripkeModel m = sample( static_cast< std::size_t >( state.range( 0 ) ), 1 );
    Formula f = parse_formula( "[]p -> [][](p | <>q) & <><>~q" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( extension_of( m, f ) );
}
BENCHMARK( BM_Evaluate )->Arg( 16 )->Arg( 256 )->Arg( 1024 );

void BM_LargestBisimulation( benchmark::State& state )
{
    KripkeModel m1 = sample( static_cast< std::size_t >( state.range( 0 ) ), 2 );
    KripkeModel m2 = sample( static_cast< std::size_t >( state.range( 0 ) ), 3 );
    for ( auto _ : state )
        benchmark::DoNotOptimize( largest_bisimulation( m1, m2 ) );
}
BENCHMARK( BM_LargestBisimulation )->Arg( 8 )->Arg( 32 )->Arg( 128 );

void BM_Partition( benchmark::State& state )
{
    KripkeModel m = sample( static_cast< std::size_t >( state.range( 0 ) ), 4 );
    for ( auto _ : state )
        benchmark::DoNotOptimize( bisimulation_partition( m ) );
}
BENCHMARK( BM_Partition )->Arg( 64 )->Arg( 512 );

void BM_HarmonizeTransitive( benchmark::State& state )
{
    std::vector< PropertySpec > specs{ builtin( "tr" ) };
    RandomModelParams p;
    p.worlds = 4;
    KripkeModel m = random_nice_model( 5, p, specs );
    for ( auto _ : state )
        benchmark::DoNotOptimize( harmonize( PointedModel{ m, 0 }, specs, static_cast< std::size_t >( state.range( 0 ) ) ) );
}
BENCHMARK( BM_HarmonizeTransitive )->Arg( 3 )->Arg( 5 );

void BM_Enumerate( benchmark::State& state )
{
    EnumerationSpace s{ 3, { "a" }, { "p" }, {}, { builtin( "tr" ) } };
    ModelEnumerator e{ s };
    for ( auto _ : state )
    {
        std::size_t n = 0;
        e.for_each( [ &n ]( const KripkeModel& m, std::uint64_t ) {
            n += m.frame().edge_count();
            return true;
        } );
        benchmark::DoNotOptimize( n );
    }
}
BENCHMARK( BM_Enumerate );

} // namespace

BENCHMARK_MAIN();
