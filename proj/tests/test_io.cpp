#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "piso/io.hpp"
#include "piso/random.hpp"
#include "test_util.hpp"

using namespace piso;
using io::Json;

namespace {

std::filesystem::path
temp_path ( const std::string & name )
{
    return std::filesystem::temp_directory_path() / ( "piso_test_io_" + name );
}

}// namespace anonymous

TEST( IoMatrix, RoundTrip )
{
    random::Engine  rng( 5 );

    for ( int k = 0; k < 20; ++k )
    {
        const auto  a = random::gaussian( rng, random::uniform_index( rng, 0, 4 ), random::uniform_index( rng, 0, 4 ) );
        const auto  b = io::matrix_from_json( Json::parse( io::to_json( a ).dump() ) );

        EXPECT_TRUE( MatrixNear( a, b, 0.0 ) );
    }
}

TEST( IoMatrix, Format )
{
    const auto  j = io::to_json( ComplexMatrix{ { 1, Complex( 0, 2 ) } } );

    EXPECT_EQ( j.dump(), R"({"cols":2,"entries":[[1.0,0.0],[0.0,2.0]],"rows":1})" );

    const auto  a = io::matrix_from_json( Json::parse( R"({"rows":1,"cols":2,"entries":[3,[0,-1]]})" ) );

    EXPECT_EQ( a( 0, 0 ), Complex( 3, 0 ) );
    EXPECT_EQ( a( 0, 1 ), Complex( 0, -1 ) );
}

TEST( IoMatrix, Malformed )
{
    EXPECT_THROW( io::matrix_from_json( Json::parse( R"({"rows":2,"cols":2,"entries":[1,2,3]})" ) ), io::ParseError );
    EXPECT_THROW( io::matrix_from_json( Json::parse( R"({"rows":-1,"cols":2,"entries":[]})" ) ), io::ParseError );
    EXPECT_THROW( io::matrix_from_json( Json::parse( R"({"rows":1,"cols":1,"entries":[[1,2,3]]})" ) ), io::ParseError );
    EXPECT_THROW( io::matrix_from_json( Json::parse( R"({"rows":1,"entries":[1]})" ) ), io::ParseError );
    EXPECT_THROW( io::matrix_from_json( Json::parse( R"({"rows":1,"cols":1,"entries":["x"]})" ) ), io::ParseError );
}

TEST( IoPartialFn, RoundTrip )
{
    const auto  b = make_labels( "b", 3 );
    const auto  a = make_labels( "a", 2 );

    for ( const auto & f : all_injective_partial_functions( b, a ) )
        EXPECT_EQ( io::partial_fn_from_json( Json::parse( io::to_json( f ).dump() ) ), f );

    EXPECT_THROW( io::partial_fn_from_json( Json::parse( R"({"source":["x","y"],"target":["z"],"map":{"x":"z","y":"z"}})" ) ),
                  io::ParseError );
    EXPECT_THROW( io::partial_fn_from_json( Json::parse( R"({"source":["x"],"target":["z"],"map":{"q":"z"}})" ) ), io::ParseError );
}

TEST( IoModule, RoundTrip )
{
    random::Engine  rng( 11 );

    for ( int k = 0; k < 10; ++k )
    {
        const auto  alg = random::algebra( rng, 3, 2 );
        const auto  e   = random::module( rng, alg, 6 );
        const auto  f   = random::module( rng, alg, 6 );
        const auto  c   = random::module_map( rng, e, f, random::MapKind::contraction );

        const auto  e2 = io::module_from_json( Json::parse( io::to_json( e ).dump() ) );

        ASSERT_EQ( e2.dim(), e.dim() );
        for ( std::size_t j = 0; j < e.dim(); ++j )
            EXPECT_TRUE( MatrixNear( e2.generator( j ), e.generator( j ), 0.0 ) );

        const auto  c2 = io::module_map_from_json( Json::parse( io::to_json( c ).dump() ) );

        EXPECT_TRUE( MatrixNear( c2.lift(), c.lift(), 1e-12 ) );
    }
}

TEST( IoPdi, RoundTripAndIndices )
{
    const auto  h = HilbertModule::hilbert_space( 2 );
    const PDI   p{ ModuleMap::from_lift( h, h, ComplexMatrix{ { 0, 1 }, { 1, 0 } } ), Submodule::full( h ) };
    const auto  q = io::pdi_from_json( Json::parse( io::to_json( p ).dump() ) );

    EXPECT_TRUE( compare_pdi( p, q, 1e-12 ).equal );

    auto  j = io::to_json( p );

    j["domain"] = Json::array( { 1 } );

    const auto  r = io::pdi_from_json( j );

    EXPECT_EQ( r.domain.dim(), 1u );
    EXPECT_LE( r.domain.distance( h.generator( 1 ) ), 1e-12 );

    j["domain"] = Json::array( { 2 } );
    EXPECT_THROW( io::pdi_from_json( j ), io::ParseError );

    j["domain"] = Json::array( { io::to_json( ComplexMatrix( 3, 1 ) ) } );
    EXPECT_THROW( io::pdi_from_json( j ), io::ParseError );
}

TEST( IoPdi, NonIsometricDomainRejected )
{
    const auto  h = HilbertModule::hilbert_space( 2 );
    const auto  c = ModuleMap::from_lift( h, h, ComplexMatrix::diagonal( { 1.0, 0.5 } ) );
    const Json  j{ { "map", io::to_json( c ) }, { "domain", Json::array( { 0, 1 } ) } };

    EXPECT_THROW( io::pdi_from_json( j ), InvalidModule );

    const Json  ok{ { "map", io::to_json( c ) }, { "domain", Json::array( { 0 } ) } };

    EXPECT_NO_THROW( io::pdi_from_json( ok ) );
}

TEST( IoDetect, Kinds )
{
    const auto  h = HilbertModule::hilbert_space( 1 );

    EXPECT_EQ( io::detect( io::to_json( ComplexMatrix::identity( 2 ) ) ), io::Kind::matrix );
    EXPECT_EQ( io::detect( io::to_json( PartialFn::identity( make_labels( "x", 2 ) ) ) ), io::Kind::partial_function );
    EXPECT_EQ( io::detect( io::to_json( h ) ), io::Kind::module );
    EXPECT_EQ( io::detect( io::to_json( ModuleMap::identity( h ) ) ), io::Kind::module_map );
    EXPECT_EQ( io::detect( io::to_json( identity_pdi( h ) ) ), io::Kind::pdi );

    EXPECT_THROW( io::detect( Json::parse( R"({"foo":1})" ) ), io::ParseError );
    EXPECT_THROW( io::detect( Json::array() ), io::ParseError );
    EXPECT_TRUE( std::holds_alternative< PDI >( io::from_json( io::to_json( identity_pdi( h ) ) ) ) );
}

TEST( IoFile, ReadWrite )
{
    const auto  p = temp_path( "m.json" );

    io::write_file( p, io::to_json( ComplexMatrix::identity( 3 ) ) );
    EXPECT_TRUE( MatrixNear( io::matrix_from_json( io::read_file( p ) ), ComplexMatrix::identity( 3 ), 0.0 ) );

    {
        std::ofstream  out( p );

        out << "{ \"rows\": 1, ";
    }
    EXPECT_THROW( io::read_file( p ), io::ParseError );
    EXPECT_THROW( io::read_file( temp_path( "does_not_exist.json" ) ), io::ParseError );
    std::filesystem::remove( p );
}
