#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace bbdiv;
using namespace bbdiv::test;

namespace
{

lts two_cycle() { return make_lts( 2, { "tau" }, { { 0, lts::tau, 1 }, { 1, lts::tau, 0 } } ); }

std::multiset<std::tuple<state_t, std::string, state_t>> transition_multiset( const lts& l )
{
    std::multiset<std::tuple<state_t, std::string, state_t>> out;
    for ( const auto& t : l.transitions() )
        out.emplace( t.src, l.label_name( t.label ), t.dst );
    return out;
}

} // namespace

TEST( Aut, ParsesEmptySystem )
{
    auto l = parse_aut( "des (0,0,1)\n" );
    EXPECT_EQ( l.state_count(), 1U );
    EXPECT_TRUE( l.transitions().empty() );
}

TEST( Aut, ParsesFixture )
{
    const auto& l = fix1();
    EXPECT_EQ( l.state_count(), 3U );
    EXPECT_EQ( l.transitions().size(), 3U );
    EXPECT_EQ( l.labels(), ( std::vector<std::string>{ "tau", "a" } ) );
}

TEST( Aut, ReportsOutOfRangeStateWithLine )
{
    try
    {
        parse_aut( "des (0,1,1)\n(0,\"b\",5)\n" );
        FAIL() << "expected a parse error";
    }
    catch ( const parse_error& e )
    {
        EXPECT_EQ( e.line(), 2U );
        EXPECT_NE( std::string( e.what() ).find( "state 5 out of range" ), std::string::npos );
    }
}

TEST( Aut, RejectsMalformedInput )
{
    EXPECT_THROW( parse_aut( "" ), parse_error );
    EXPECT_THROW( parse_aut( "dex (0,0,1)" ), parse_error );
    EXPECT_THROW( parse_aut( "des (0,0)" ), parse_error );
    EXPECT_THROW( parse_aut( "des (0,2,2)\n(0,\"a\",1)\n" ), parse_error );
    EXPECT_THROW( parse_aut( "des (0,1,2)\n0,\"a\",1\n" ), parse_error );
    EXPECT_THROW( parse_aut( "des (3,0,2)\n" ), parse_error );
    EXPECT_THROW( parse_aut( "des (0,1,2)\n(0,\"\",1)\n" ), parse_error );
    EXPECT_THROW( parse_aut( "des (0,1,2)\n(x,\"a\",1)\n" ), parse_error );
}

TEST( Aut, TransitionCountMismatchNamesHeaderLine )
{
    try
    {
        parse_aut( "\ndes (0,2,2)\n(0,\"a\",1)\n" );
        FAIL();
    }
    catch ( const parse_error& e )
    {
        EXPECT_EQ( e.line(), 2U );
    }
}

TEST( Aut, SilentAliasIsNormalised )
{
    auto l = parse_aut( "des (0,2,2)\n(0,\"i\",1)\n(1,\"tau\",0)\n" );
    EXPECT_EQ( l.label_count(), 1U );
    EXPECT_EQ( emit_aut( l ), "des (0,2,2)\n(0,\"tau\",1)\n(1,\"tau\",0)\n" );
}

TEST( Aut, EmitsEmptySystem ) { EXPECT_EQ( emit_aut( fix3() ), "des (0,0,1)\n" ); }

TEST( Aut, RoundTripsFixtures )
{
    for ( const auto* l : { &fix1(), &fix2(), &fix3() } )
    {
        auto again = parse_aut( emit_aut( *l ) );
        EXPECT_EQ( transition_multiset( again ), transition_multiset( *l ) );
        EXPECT_EQ( again.state_count(), l->state_count() );
        EXPECT_EQ( emit_aut( again ), emit_aut( *l ) );
    }
}

TEST( Aut, EmitsSortedTransitions )
{
    auto l = parse_aut( "des (1,3,3)\n(2,\"b\",0)\n(0,\"a\",1)\n(0,\"tau\",2)\n" );
    EXPECT_EQ( emit_aut( l ), "des (1,3,3)\n(0,\"tau\",2)\n(0,\"a\",1)\n(2,\"b\",0)\n" );
}

TEST( Aut, RoundTripsRandomSystems )
{
    generator gen( 11 );
    for ( int i = 0; i < 200; ++i )
    {
        auto l = gen.random_lts( 8, 0.4 );
        auto again = parse_aut( emit_aut( l ) );
        EXPECT_EQ( transition_multiset( again ), transition_multiset( l ) );
    }
}

TEST( Lts, RejectsInvalidConstruction )
{
    EXPECT_THROW( lts( 1, 0, { "a" }, {} ), precondition_error );
    EXPECT_THROW( lts( 1, 0, { "tau", "i" }, {} ), precondition_error );
    EXPECT_THROW( lts( 1, 0, { "tau", "a", "a" }, {} ), precondition_error );
    EXPECT_THROW( lts( 1, 0, { "tau", "a\"b" }, {} ), precondition_error );
    EXPECT_THROW( lts( 1, 2, { "tau" }, {} ), precondition_error );
    EXPECT_THROW( lts( 1, 0, { "tau" }, { { 0, 0, 1 } } ), precondition_error );
}

TEST( Lts, DuplicateTransitionsCollapse )
{
    auto l = make_lts( 2, { "tau" }, { { 0, 0, 1 }, { 0, 0, 1 } } );
    EXPECT_EQ( l.transitions().size(), 1U );
}

TEST( Lts, Successors )
{
    const auto& l = fix1();
    auto a = *l.find_label( "a" );
    EXPECT_EQ( successors( l, 0, lts::tau ), set_of( 3, { 0 } ) );
    EXPECT_EQ( successors( l, 1, a ), set_of( 3, { 2 } ) );
    EXPECT_TRUE( successors( l, 2, lts::tau ).empty() );
    EXPECT_TRUE( successors( l, 2, a ).empty() );
}

TEST( Lts, OptionalStep )
{
    const auto& l = fix1();
    auto a = *l.find_label( "a" );
    EXPECT_EQ( opt_step( l, 1, lts::tau ), set_of( 3, { 1 } ) );
    EXPECT_EQ( opt_step( l, 0, lts::tau ), set_of( 3, { 0 } ) );
    EXPECT_EQ( opt_step( l, 0, a ), set_of( 3, { 2 } ) );
}

TEST( Lts, SilentClosures )
{
    EXPECT_EQ( tau_closure( fix1(), 0 ), set_of( 3, { 0 } ) );
    EXPECT_EQ( tau_closure( fix2(), 0 ), set_of( 4, { 0, 1 } ) );
    EXPECT_EQ( tau_closure( fix3(), 0 ), set_of( 1, { 0 } ) );
    EXPECT_EQ( tau_plus( fix1(), 0 ), set_of( 3, { 0 } ) );
    EXPECT_TRUE( tau_plus( fix1(), 1 ).empty() );
    EXPECT_EQ( tau_plus( fix2(), 0 ), set_of( 4, { 1 } ) );
}

TEST( Lts, ClosureRecursionAndOracle )
{
    generator gen( 12 );
    for ( int i = 0; i < 200; ++i )
    {
        auto l = gen.random_lts( 8, 0.5 );
        for ( state_t s = 0; s < l.state_count(); ++s )
        {
            auto cl = state_set( l.state_count(), { s } );
            auto plus = l.empty_set();
            successors( l, s, lts::tau ).for_each( [ & ]( state_t u ) { plus |= tau_closure( l, u ); } );
            cl |= plus;
            EXPECT_EQ( tau_closure( l, s ), cl );
            EXPECT_EQ( tau_plus( l, s ), plus );
            EXPECT_EQ( oracle::to_mask( tau_closure( l, s ) ), oracle::closure( l, s ) );
        }
    }
}

TEST( Lts, DivergenceWithin )
{
    const auto& l = fix1();
    EXPECT_TRUE( has_divergence_within( l, 0, l.all_states() ) );
    EXPECT_FALSE( has_divergence_within( l, 1, l.all_states() ) );
    EXPECT_FALSE( has_divergence_within( l, 0, set_of( 3, { 1, 2 } ) ) );
}

TEST( Lts, DivergenceWalkIsALasso )
{
    generator gen( 13 );
    for ( int i = 0; i < 200; ++i )
    {
        auto l = gen.random_lts( 8, 0.6 );
        auto within = gen.random_partition( l.state_count() ).members( 0 );
        for ( state_t s = 0; s < l.state_count(); ++s )
        {
            auto walk = divergence_walk( l, s, within );
            EXPECT_EQ( !walk.empty(), has_divergence_within( l, s, within ) );
            EXPECT_EQ( !walk.empty(), oracle::diverges( l, s, within ) );
            if ( walk.empty() )
                continue;
            EXPECT_EQ( walk.front(), s );
            EXPECT_NE( std::find( walk.begin(), walk.end() - 1, walk.back() ), walk.end() - 1 );
            for ( std::size_t k = 0; k < walk.size(); ++k )
            {
                EXPECT_TRUE( within.contains( walk[ k ] ) );
                if ( k > 0 )
                {
                    EXPECT_TRUE( successors( l, walk[ k - 1 ], lts::tau ).contains( walk[ k ] ) );
                }
            }
        }
    }
}

TEST( Lts, PathValidity )
{
    const auto& l = fix1();
    auto a = *l.find_label( "a" );
    EXPECT_TRUE( is_valid_path( l, { { 0, 0, 2 }, { lts::tau, a } } ) );
    EXPECT_TRUE( is_valid_path( l, { { 1 }, {} } ) );
    EXPECT_FALSE( is_valid_path( l, { { 1, 1 }, { lts::tau } } ) );
    EXPECT_FALSE( is_valid_path( l, { {}, {} } ) );
    EXPECT_FALSE( is_valid_path( l, { { 0, 2 }, {} } ) );
}

TEST( Lassos, SelfLoop )
{
    const auto& l = fix1();
    auto ls = enumerate_lassos( l, 0, l.all_states() );
    ASSERT_EQ( ls.size(), 1U );
    EXPECT_EQ( ls[ 0 ].full_set, set_of( 3, { 0 } ) );
    EXPECT_EQ( ls[ 0 ].tail_set, set_of( 3, { 0 } ) );
}

TEST( Lassos, NoneWithoutSilentSteps ) { EXPECT_TRUE( enumerate_lassos( fix3(), 0, fix3().all_states() ).empty() ); }

TEST( Lassos, TwoCycleVisitsBothStates )
{
    auto l = two_cycle();
    auto ls = enumerate_lassos( l, 0, l.all_states() );
    ASSERT_EQ( ls.size(), 1U );
    EXPECT_EQ( ls[ 0 ].full_set, set_of( 2, { 0, 1 } ) );
    EXPECT_EQ( ls[ 0 ].tail_set, set_of( 2, { 0, 1 } ) );
    EXPECT_EQ( oracle::visited_sets( l, 0, l.all_states() ),
               ( std::set<std::pair<oracle::mask, oracle::mask>>{ { 3, 3 } } ) );
}

TEST( Lassos, TailExcludesUnrevisitedStart )
{
    auto l = make_lts( 2, { "tau" }, { { 0, lts::tau, 1 }, { 1, lts::tau, 1 } } );
    auto ls = enumerate_lassos( l, 0, l.all_states() );
    ASSERT_EQ( ls.size(), 1U );
    EXPECT_EQ( ls[ 0 ].full_set, set_of( 2, { 0, 1 } ) );
    EXPECT_EQ( ls[ 0 ].tail_set, set_of( 2, { 1 } ) );
}

TEST( Lassos, StartOutsideDomain ) { EXPECT_TRUE( enumerate_lassos( fix1(), 0, set_of( 3, { 1, 2 } ) ).empty() ); }

TEST( Lassos, BoundIsEnforced )
{
    generator gen( 14 );
    auto l = gen.random_lts_exact( 20, 30, 0.5 );
    EXPECT_THROW( enumerate_lassos( l, 0, l.all_states() ), bound_exceeded );
    EXPECT_NO_THROW( enumerate_lassos( l, 0, l.all_states(), 20 ) );
    EXPECT_THROW( enumerate_lassos( l, 0, l.all_states(), 65 ), precondition_error );
}

TEST( Lassos, MatchVisitedSetOracle )
{
    generator gen( 15 );
    for ( int i = 0; i < 300; ++i )
    {
        auto l = gen.random_lts( 7, 0.6 );
        auto p = gen.random_partition( l.state_count() );
        for ( const auto& within : { l.all_states(), p.members( 0 ) } )
            for ( state_t s = 0; s < l.state_count(); ++s )
            {
                std::set<std::pair<oracle::mask, oracle::mask>> got;
                for ( const auto& ls : enumerate_lassos( l, s, within ) )
                {
                    EXPECT_TRUE( is_valid_lasso( l, s, within, ls ) );
                    got.emplace( oracle::to_mask( ls.full_set ), oracle::to_mask( ls.tail_set ) );
                }
                EXPECT_EQ( got, oracle::visited_sets( l, s, within ) ) << emit_aut( l ) << "from " << s;
                EXPECT_EQ( !got.empty(), has_divergence_within( l, s, within ) );
            }
    }
}

TEST( Lassos, ValidityCheckRejectsForgeries )
{
    auto l = two_cycle();
    auto all = l.all_states();
    lasso good{ { 0, 1, 0 }, set_of( 2, { 0, 1 } ), set_of( 2, { 0, 1 } ) };
    EXPECT_TRUE( is_valid_lasso( l, 0, all, good ) );
    auto no_repeat = good;
    no_repeat.walk = { 0, 1 };
    EXPECT_FALSE( is_valid_lasso( l, 0, all, no_repeat ) );
    auto wrong_tail = good;
    wrong_tail.tail_set = set_of( 2, { 1 } );
    EXPECT_FALSE( is_valid_lasso( l, 0, all, wrong_tail ) );
    EXPECT_FALSE( is_valid_lasso( l, 0, set_of( 2, { 0 } ), good ) );
}

TEST( Quotient, DiscreteIsIsomorphic )
{
    auto q = quotient( fix1(), partition::discrete( 3 ) );
    EXPECT_EQ( emit_aut( q ), emit_aut( fix1() ) );
}

TEST( Quotient, MergesSilentChains )
{
    auto q = quotient( fix2(), partition::from_blocks( 4, { { 0, 2 }, { 1, 3 } } ) );
    EXPECT_EQ( emit_aut( q ), "des (0,1,2)\n(0,\"tau\",1)\n" );
}

TEST( Quotient, KeepsDivergenceOfMinimalSystem )
{
    auto q = quotient( fix1(), compute_bbd( fix1() ) );
    EXPECT_EQ( q.state_count(), 3U );
    EXPECT_TRUE( has_divergence_within( q, q.initial(), q.all_states() ) );
}

TEST( Quotient, InertCycleBecomesSelfLoop )
{
    auto q = quotient( two_cycle(), partition::single_block( 2 ) );
    EXPECT_EQ( emit_aut( q ), "des (0,1,1)\n(0,\"tau\",0)\n" );
    auto plain = quotient( make_lts( 2, { "tau" }, { { 0, lts::tau, 1 } } ), partition::single_block( 2 ) );
    EXPECT_EQ( emit_aut( plain ), "des (0,0,1)\n" );
}

TEST( Quotient, InitialStateFollowsItsBlock )
{
    auto l = lts( 3, 2, { "tau", "a" }, { { 0, 1, 2 } } );
    auto q = quotient( l, partition::from_blocks( 3, { { 0 }, { 1, 2 } } ) );
    EXPECT_EQ( q.initial(), 1U );
}
