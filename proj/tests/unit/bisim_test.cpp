#include "test_support.hpp"

#include <localmodal/bisim.hpp>
#include <localmodal/harmony.hpp>
#include <localmodal/search.hpp>
#include <localmodal/semantics.hpp>

#include <gtest/gtest.h>

using namespace localmodal;
using namespace localmodal::testing;

namespace
{

KripkeModel with_p( KripkeModel m, std::uint64_t bits )
{
    m.set_valuation( "p", WorldSet( m.world_count(), bits ) );
    return m;
}

KripkeModel random_small( rng_t& rng, std::size_t max_worlds, std::vector< AgentId > agents = { "a" } )
{
    RandomModelParams p;
    p.worlds = 1 + pick( rng, max_worlds );
    p.agents = std::move( agents );
    p.edge_density = 0.2 + 0.1 * static_cast< double >( pick( rng, 6 ) );
    return random_model( rng(), p );
}

// Union of all bisimulations, by trying every candidate relation.
WorldRelation brute_force( const KripkeModel& a, const KripkeModel& b )
{
    const std::size_t n1 = a.world_count(), n2 = b.world_count();
    WorldRelation best( n1, n2 );
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << ( n1 * n2 ) ); ++bits )
    {
        WorldRelation r( n1, n2 );
        for ( std::size_t k = 0; k < n1 * n2; ++k )
            if ( ( bits >> k ) & 1U )
                r.set( k / n2, k % n2 );
        if ( is_bisimulation( a, b, r ) )
            for ( auto [ x, y ] : r.pairs() )
                best.set( x, y );
    }
    return best;
}

} // namespace

TEST( Largest, Examples )
{
    KripkeModel loop = with_p( frame_from_bits( 1, 1 ), 1 );
    WorldRelation r = largest_bisimulation( loop, loop );
    EXPECT_EQ( r.size(), 1U );
    EXPECT_TRUE( r.contains( 0, 0 ) );

    KripkeModel yes = with_p( frame_from_bits( 1, 0 ), 1 );
    KripkeModel no = with_p( frame_from_bits( 1, 0 ), 0 );
    EXPECT_EQ( largest_bisimulation( yes, no ).size(), 0U );
    EXPECT_FALSE( bisimilar( PointedModel{ yes, 0 }, PointedModel{ no, 0 } ) );
}

TEST( Largest, LoopAndChainEndingInLoop )
{
    KripkeModel loop = frame_from_bits( 1, 1 );
    KripkeModel chain = frame_from_bits( 3, 0 );
    chain.frame().add_edge( 0, 0, 1 );
    chain.frame().add_edge( 0, 1, 2 );
    chain.frame().add_edge( 0, 2, 2 );
    EXPECT_TRUE( bisimilar( PointedModel{ loop, 0 }, PointedModel{ chain, 0 } ) );
    Evaluator el{ loop }, ec{ chain };
    rng_t rng{ 51 };
    for ( int i = 0; i < 200; ++i )
    {
        Formula f = random_formula( rng, 5, { "p" }, { "a" }, {}, 10 );
        ASSERT_EQ( el.at( 0, f ), ec.at( 0, f ) );
    }
}

TEST( Largest, AcyclicModelAndItsUnravelling )
{
    rng_t rng{ 52 };
    for ( int i = 0; i < 100; ++i )
    {
        const std::size_t n = 1 + pick( rng, 4 );
        // Edges only go forward in index order.
        KripkeModel m = frame_from_bits( n, 0 );
        for ( std::size_t u = 0; u < n; ++u )
            for ( std::size_t v = u + 1; v < n; ++v )
                if ( pick( rng, 2 ) )
                    m.frame().add_edge( 0, u, v );
        m = with_p( m, rng() & ( ( 1U << n ) - 1 ) );
        UnravelledModel u = unravel( PointedModel{ m, 0 }, n );
        WorldRelation z = largest_bisimulation( m, u.base );
        for ( WorldIndex x = 0; x < u.base.world_count(); ++x )
            ASSERT_TRUE( z.contains( u.originals[ x ], x ) );
    }
}

TEST( Largest, MatchesBruteForce )
{
    rng_t rng{ 53 };
    for ( int i = 0; i < 400; ++i )
    {
        KripkeModel a = random_small( rng, 3 );
        KripkeModel b = random_small( rng, 3 );
        if ( a.world_count() * b.world_count() > 9 )
            continue;
        ASSERT_EQ( largest_bisimulation( a, b ), brute_force( a, b ) );
    }
}

TEST( Largest, IsABisimulation )
{
    rng_t rng{ 54 };
    for ( int i = 0; i < 300; ++i )
    {
        KripkeModel a = random_small( rng, 5, { "a", "b" } );
        KripkeModel b = random_small( rng, 5, { "a", "b" } );
        ASSERT_TRUE( is_bisimulation( a, b, largest_bisimulation( a, b ) ) );
    }
}

TEST( Partition, AgreesWithPairwiseRefinement )
{
    rng_t rng{ 55 };
    for ( int i = 0; i < 300; ++i )
    {
        KripkeModel m = random_small( rng, 7, { "a", "b" } );
        const auto blocks = bisimulation_partition( m );
        const WorldRelation z = largest_bisimulation( m, m );
        for ( WorldIndex x = 0; x < m.world_count(); ++x )
            for ( WorldIndex y = 0; y < m.world_count(); ++y )
                ASSERT_EQ( blocks[ x ] == blocks[ y ], z.contains( x, y ) );
    }
}

TEST( Partition, BlocksNumberedByFirstWorld )
{
    KripkeModel m = with_p( frame_from_bits( 3, 0 ), 0b010 );
    EXPECT_EQ( bisimulation_partition( m ), ( std::vector< std::size_t >{ 0, 1, 0 } ) );
}

TEST( Theta, CountsUnlessIgnored )
{
    KripkeModel a = frame_from_bits( 1, 1 );
    KripkeModel b = frame_from_bits( 1, 1 );
    a.set_extension( "tr", WorldSet( 1, 1 ) );
    EXPECT_FALSE( bisimilar( PointedModel{ a, 0 }, PointedModel{ b, 0 } ) );
    EXPECT_TRUE( bisimilar( PointedModel{ a, 0 }, PointedModel{ b, 0 }, BisimOptions{ true } ) );
    b.set_extension( "tr", WorldSet( 1, 1 ) );
    EXPECT_TRUE( bisimilar( PointedModel{ a, 0 }, PointedModel{ b, 0 } ) );
}

TEST( Theta, MissingAgentCountsAsEmpty )
{
    KripkeModel lone{ { "w" }, {} };
    KripkeModel dead{ { "v" }, { "a" } };
    EXPECT_TRUE( bisimilar( PointedModel{ lone, 0 }, PointedModel{ dead, 0 } ) );
    dead.frame().add_edge( 0, 0, 0 );
    EXPECT_FALSE( bisimilar( PointedModel{ lone, 0 }, PointedModel{ dead, 0 } ) );
}

TEST( Bounded, Examples )
{
    KripkeModel a = frame_from_bits( 2, 0b0010 );
    KripkeModel b = frame_from_bits( 1, 0 );
    EXPECT_TRUE( d_bisimilar( PointedModel{ a, 0 }, PointedModel{ b, 0 }, 0 ) );
    EXPECT_FALSE( d_bisimilar( PointedModel{ a, 0 }, PointedModel{ b, 0 }, 1 ) );
    EXPECT_TRUE( d_bisimilar( PointedModel{ a, 1 }, PointedModel{ b, 0 }, 5 ) );
}

TEST( Bounded, MonotoneAndStabilizing )
{
    rng_t rng{ 56 };
    for ( int i = 0; i < 300; ++i )
    {
        KripkeModel a = random_small( rng, 4 );
        KripkeModel b = random_small( rng, 4 );
        const WorldRelation full = largest_bisimulation( a, b );
        WorldRelation previous = d_bisimulation( a, b, 0 );
        for ( std::size_t d = 1; d <= 10; ++d )
        {
            WorldRelation level = d_bisimulation( a, b, d );
            for ( auto [ x, y ] : level.pairs() )
                ASSERT_TRUE( previous.contains( x, y ) );
            for ( auto [ x, y ] : full.pairs() )
                ASSERT_TRUE( level.contains( x, y ) );
            if ( d >= a.world_count() * b.world_count() )
                ASSERT_EQ( level, full );
            previous = std::move( level );
        }
    }
}

TEST( Bounded, UnravellingRootAtDepthBound )
{
    rng_t rng{ 57 };
    for ( int i = 0; i < 200; ++i )
    {
        KripkeModel m = random_small( rng, 4, { "a", "b" } );
        PointedModel pm{ m, pick( rng, m.world_count() ) };
        const std::size_t d = 1 + pick( rng, 3 );
        UnravelledModel u = unravel( pm, d );
        ASSERT_TRUE( d_bisimilar( pm, PointedModel{ u.base, u.root }, d ) );
    }
}

TEST( Bounded, FormulasUpToDepthAgree )
{
    rng_t rng{ 58 };
    for ( int i = 0; i < 300; ++i )
    {
        KripkeModel a = random_small( rng, 4 );
        KripkeModel b = random_small( rng, 4 );
        const std::size_t d = pick( rng, 4 );
        WorldRelation level = d_bisimulation( a, b, d );
        Evaluator ea{ a }, eb{ b };
        for ( auto [ x, y ] : level.pairs() )
            for ( int k = 0; k < 5; ++k )
            {
                Formula f = random_formula( rng, d, { "p" }, { "a" }, {}, 8 );
                ASSERT_EQ( ea.at( x, f ), eb.at( y, f ) );
            }
    }
}

TEST( RelationIds, Sorted )
{
    KripkeModel a{ { "z", "y" }, { "a" } };
    KripkeModel b{ { "q" }, { "a" } };
    WorldRelation r = largest_bisimulation( a, b );
    auto ids = relation_ids( a, b, r );
    EXPECT_EQ( ids, ( std::vector< std::pair< std::string, std::string > >{ { "y", "q" }, { "z", "q" } } ) );
}
