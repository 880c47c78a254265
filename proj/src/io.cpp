#include "piso/io.hpp"

#include <fstream>

namespace piso::io {

namespace {

const Json &
field ( const Json & j, const char * key )
{
    if ( ! j.is_object() || ! j.contains( key ) )
        throw ParseError( std::string( "missing field \"" ) + key + "\"" );
    return j.at( key );
}

std::size_t
count ( const Json & j, const char * what )
{
    if ( ! j.is_number_integer() || j.get< long long >() < 0 )
        throw ParseError( std::string( what ) + ": expected a nonnegative integer" );
    return j.get< std::size_t >();
}

Complex
scalar ( const Json & j )
{
    if ( j.is_number() )
        return { j.get< double >(), 0.0 };
    if ( j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number() )
        return { j[0].get< double >(), j[1].get< double >() };
    throw ParseError( "complex entry must be [re, im]" );
}

std::vector< std::string >
labels ( const Json & j, const char * what )
{
    if ( ! j.is_array() )
        throw ParseError( std::string( what ) + ": expected an array of labels" );

    std::vector< std::string >  r;

    for ( const auto & x : j )
    {
        if ( ! x.is_string() )
            throw ParseError( std::string( what ) + ": labels must be strings" );
        r.push_back( x.get< std::string >() );
    }
    return r;
}

}// namespace anonymous

Json
to_json ( const ComplexMatrix & a )
{
    Json  entries = Json::array();

    for ( const auto & z : a.entries() )
        entries.push_back( { z.real(), z.imag() } );
    return { { "rows", a.rows() }, { "cols", a.cols() }, { "entries", std::move( entries ) } };
}

ComplexMatrix
matrix_from_json ( const Json & j )
{
    const auto    rows    = count( field( j, "rows" ), "rows" );
    const auto    cols    = count( field( j, "cols" ), "cols" );
    const auto &  entries = field( j, "entries" );

    if ( ! entries.is_array() || entries.size() != rows * cols )
        throw ParseError( "entries: expected " + std::to_string( rows * cols ) + " values" );

    std::vector< Complex >  v;

    v.reserve( entries.size() );
    for ( const auto & e : entries )
        v.push_back( scalar( e ) );

    try
    {
        return ComplexMatrix( rows, cols, std::move( v ) );
    }
    catch ( const InvalidValue & e )
    {
        throw ParseError( e.what() );
    }
}

Json
to_json ( const PartialFn & f )
{
    Json  map = Json::object();

    for ( const auto & [ b, a ] : f.mapping() )
        map[b] = a;
    return { { "source", f.source().labels() }, { "target", f.target().labels() }, { "map", std::move( map ) } };
}

PartialFn
partial_fn_from_json ( const Json & j )
{
    const auto &  m = field( j, "map" );

    if ( ! m.is_object() )
        throw ParseError( "map: expected an object" );

    std::map< std::string, std::string >  mapping;

    for ( const auto & [ k, v ] : m.items() )
    {
        if ( ! v.is_string() )
            throw ParseError( "map: values must be labels" );
        mapping[k] = v.get< std::string >();
    }

    try
    {
        return PartialFn( FiniteSet( labels( field( j, "source" ), "source" ) ),
                          FiniteSet( labels( field( j, "target" ), "target" ) ), std::move( mapping ) );
    }
    catch ( const InvalidValue & e )
    {
        throw ParseError( e.what() );
    }
}

Json
to_json ( const HilbertModule & e )
{
    Json  gens = Json::array();

    for ( const auto & g : e.generators() )
        gens.push_back( to_json( g ) );
    return { { "blocks", e.algebra().block_sizes() }, { "lift_dim", e.lift_dim() }, { "generators", std::move( gens ) } };
}

HilbertModule
module_from_json ( const Json & j, const Tolerance & tol )
{
    const auto &  b = field( j, "blocks" );

    if ( ! b.is_array() )
        throw ParseError( "blocks: expected an array" );

    std::vector< std::size_t >  blocks;

    for ( const auto & n : b )
        blocks.push_back( count( n, "blocks" ) );

    const auto &  g = field( j, "generators" );

    if ( ! g.is_array() )
        throw ParseError( "generators: expected an array" );

    std::vector< ComplexMatrix >  gens;

    for ( const auto & x : g )
        gens.push_back( matrix_from_json( x ) );

    return HilbertModule( CStarAlgebra( std::move( blocks ) ), count( field( j, "lift_dim" ), "lift_dim" ), std::move( gens ), tol );
}

Json
to_json ( const ModuleMap & c )
{
    return { { "source", to_json( c.source() ) }, { "target", to_json( c.target() ) }, { "action", to_json( c.action() ) } };
}

ModuleMap
module_map_from_json ( const Json & j, const Tolerance & tol )
{
    return ModuleMap::from_action( module_from_json( field( j, "source" ), tol ), module_from_json( field( j, "target" ), tol ),
                                   matrix_from_json( field( j, "action" ) ), tol );
}

Json
to_json ( const PDI & p )
{
    Json  dom = Json::array();

    for ( const auto & x : p.domain.elements() )
        dom.push_back( to_json( x ) );
    return { { "map", to_json( p.map ) }, { "domain", std::move( dom ) } };
}

PDI
pdi_from_json ( const Json & j, const Tolerance & tol )
{
    auto          map = module_map_from_json( field( j, "map" ), tol );
    const auto &  d   = field( j, "domain" );

    if ( ! d.is_array() )
        throw ParseError( "domain: expected an array" );

    const auto &                  src = map.source();
    std::vector< ComplexMatrix >  xs;

    for ( const auto & x : d )
    {
        if ( x.is_number_integer() )
        {
            const auto  k = count( x, "domain" );

            if ( k >= src.dim() )
                throw ParseError( "domain: generator index " + std::to_string( k ) + " out of range" );
            xs.push_back( src.generator( k ) );
        }
        else
            xs.push_back( matrix_from_json( x ) );
    }

    for ( const auto & x : xs )
        if ( x.rows() != src.lift_dim() || x.cols() != src.algebra().dim() || ! src.contains( x, 1e-8 * std::max( 1.0, frobenius_norm( x ) ) ) )
            throw ParseError( "domain: element outside the source module" );

    auto  domain = Submodule::generated_by( src, xs, tol );
    PDI   p{ std::move( map ), std::move( domain ) };

    p.validate( tol );
    return p;
}

Kind
detect ( const Json & j )
{
    if ( ! j.is_object() )
        throw ParseError( "expected a JSON object" );
    if ( j.contains( "entries" ) )
        return Kind::matrix;
    if ( j.contains( "map" ) && j.contains( "domain" ) )
        return Kind::pdi;
    if ( j.contains( "map" ) )
        return Kind::partial_function;
    if ( j.contains( "action" ) )
        return Kind::module_map;
    if ( j.contains( "generators" ) )
        return Kind::module;
    throw ParseError( "unrecognized document: no matrix, partial function, module, module map or pdi keys" );
}

Object
from_json ( const Json & j, const Tolerance & tol )
{
    try
    {
        switch ( detect( j ) )
        {
            case Kind::matrix:           return matrix_from_json( j );
            case Kind::partial_function: return partial_fn_from_json( j );
            case Kind::module:           return module_from_json( j, tol );
            case Kind::module_map:       return module_map_from_json( j, tol );
            case Kind::pdi:              return pdi_from_json( j, tol );
        }
    }
    catch ( const Json::exception & e )
    {
        throw ParseError( e.what() );
    }
    throw ParseError( "unreachable" );
}

Json
read_file ( const std::filesystem::path & path )
{
    std::ifstream  in( path );

    if ( ! in )
        throw ParseError( "cannot open " + path.string() );

    try
    {
        return Json::parse( in );
    }
    catch ( const Json::parse_error & e )
    {
        throw ParseError( path.string() + ": " + e.what() );
    }
}

void
write_file ( const std::filesystem::path & path, const Json & j )
{
    std::ofstream  out( path );

    if ( ! out )
        throw ParseError( "cannot write " + path.string() );
    out << j.dump( 2 ) << '\n';
}

}// namespace piso::io
