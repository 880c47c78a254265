#include <gtest/gtest.h>

#include <algorithm>

#include "piso/suites.hpp"

using namespace piso;
using suites::SuiteConfig;

namespace {

SuiteConfig
config ( const std::string & suite, std::size_t trials, std::size_t dim, std::uint64_t seed )
{
    SuiteConfig  c;

    c.suite  = suite;
    c.trials = trials;
    c.dim    = dim;
    c.seed   = seed;
    return c;
}

}// namespace anonymous

TEST( Suites, Names )
{
    const std::vector< std::string >  expect{ "pilem",  "clem",       "cthm",    "cathm",      "functor",
                                              "module-tool", "invariance", "univthm", "proposition" };

    EXPECT_EQ( suites::suite_names(), expect );
}

TEST( Suites, ConfigValidation )
{
    EXPECT_THROW( config( "pilem", 0, 3, 0 ).validate(), InvalidValue );
    EXPECT_THROW( config( "pilem", 1, 0, 0 ).validate(), InvalidValue );
    EXPECT_THROW( config( "pilem", 1, 17, 0 ).validate(), InvalidValue );
    EXPECT_THROW( config( "nope", 1, 3, 0 ).validate(), InvalidValue );
    EXPECT_NO_THROW( config( "all", 1, 16, 0 ).validate() );

    auto  c = config( "pilem", 1, 3, 0 );

    c.jobs = 0;
    EXPECT_THROW( c.validate(), InvalidValue );
    c.jobs   = 1;
    c.tol.eq = -1;
    EXPECT_THROW( c.validate(), InvalidValue );
}

class EverySuite : public ::testing::TestWithParam< std::string > {};

TEST_P( EverySuite, PassesSmallRun )
{
    const auto  rep = suites::run( config( GetParam(), 8, 3, 2024 ) );

    ASSERT_EQ( rep.suites.size(), 1u );
    for ( const auto & c : rep.suites[0].checks )
    {
        EXPECT_TRUE( c.passed() ) << c.name << ": " << ( c.counterexamples.empty() ? "" : c.counterexamples[0].message );
        EXPECT_GT( c.evaluated, 0u );
    }
    ASSERT_NE( rep.suites[0].find( "no exceptions" ), nullptr );
    EXPECT_EQ( rep.suites[0].find( "no exceptions" )->evaluated, 8u );
}

INSTANTIATE_TEST_SUITE_P( All, EverySuite, ::testing::ValuesIn( suites::suite_names() ),
                          [] ( const auto & info ) {
                              std::string  n = info.param;

                              std::replace( n.begin(), n.end(), '-', '_' );
                              return n;
                          } );

TEST( Suites, Deterministic )
{
    auto  c = config( "proposition", 6, 3, 99 );

    const auto  a = suites::run( c ).to_json().dump();
    const auto  b = suites::run( c ).to_json().dump();

    EXPECT_EQ( a, b );

    c.jobs = 3;
    EXPECT_EQ( suites::run( c ).to_json().dump(), a );

    c.seed = 100;
    EXPECT_NE( suites::run( c ).to_json().dump(), a );
}

TEST( Suites, TimingOnlyWhenAsked )
{
    const auto  rep = suites::run( config( "cathm", 2, 2, 1 ) );

    EXPECT_FALSE( rep.to_json()["suites"][0].contains( "seconds" ) );
    EXPECT_TRUE( rep.to_json( true )["suites"][0].contains( "seconds" ) );
    EXPECT_NE( rep.table().find( "cathm" ), std::string::npos );
}

// a zero tolerance turns every nonzero residual into a failure
TEST( Suites, CounterexamplesReplay )
{
    auto  c = config( "cathm", 10, 4, 5 );

    c.tol.eq = 0;

    const auto  rep = suites::run( c );

    ASSERT_FALSE( rep.passed() );

    const suites::Check *  failing = nullptr;

    for ( const auto & ch : rep.suites[0].checks )
        if ( ! ch.passed() )
        {
            failing = &ch;
            break;
        }
    ASSERT_NE( failing, nullptr );
    ASSERT_FALSE( failing->counterexamples.empty() );
    EXPECT_LE( failing->counterexamples.size(), 3u );

    for ( std::size_t k = 1; k < failing->counterexamples.size(); ++k )
        EXPECT_LT( failing->counterexamples[k - 1].trial, failing->counterexamples[k].trial );

    const auto &  ce = failing->counterexamples[0];

    c.trial_seed = ce.seed;

    const auto  replay = suites::run( c );
    const auto  again  = replay.suites[0].find( failing->name );

    ASSERT_NE( again, nullptr );
    EXPECT_EQ( again->evaluated, 1u );
    EXPECT_EQ( again->failures, 1u );
    EXPECT_EQ( again->counterexamples[0].message, ce.message );
    EXPECT_EQ( again->counterexamples[0].inputs, ce.inputs );
}

TEST( Suites, AllRunsEverySuite )
{
    const auto  rep = suites::run( config( "all", 1, 2, 3 ) );

    EXPECT_EQ( rep.suites.size(), suites::suite_names().size() );
    EXPECT_TRUE( rep.passed() );
    EXPECT_NE( rep.find( "univthm" ), nullptr );
    EXPECT_EQ( rep.find( "missing" ), nullptr );
}
