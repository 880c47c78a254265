#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "piso/io.hpp"
#include "piso/partial_isometry.hpp"
#include "piso/suites.hpp"

namespace py = pybind11;
using namespace piso;

namespace {

using Array = py::array_t< Complex, py::array::c_style | py::array::forcecast >;

ComplexMatrix
to_matrix ( const Array & a )
{
    if ( a.ndim() != 2 )
        throw py::value_error( "expected a 2-d array" );

    const auto  r = static_cast< std::size_t >( a.shape( 0 ) );
    const auto  c = static_cast< std::size_t >( a.shape( 1 ) );

    return ComplexMatrix( r, c, std::vector< Complex >( a.data(), a.data() + r * c ) );
}

Array
to_array ( const ComplexMatrix & m )
{
    Array  a( { m.rows(), m.cols() } );

    std::copy( m.entries().begin(), m.entries().end(), a.mutable_data() );
    return a;
}

Tolerance
tolerance ( double eq )
{
    Tolerance  t;

    t.eq = eq;
    t.validate();
    return t;
}

py::dict
class_dict ( const OperatorClass & c )
{
    py::dict  d;

    d["contraction"]      = c.is_contraction;
    d["projection"]       = c.is_projection;
    d["isometry"]         = c.is_isometry;
    d["coisometry"]       = c.is_coisometry;
    d["partial_isometry"] = c.is_partial_isometry;
    d["unitary"]          = c.is_unitary;
    d["description"]      = describe( c );
    return d;
}

py::object
json_to_python ( const io::Json & j )
{
    return py::module_::import( "json" ).attr( "loads" )( j.dump() );
}

io::Json
python_to_json ( const py::object & o )
{
    return io::Json::parse( py::module_::import( "json" ).attr( "dumps" )( o ).cast< std::string >() );
}

}// namespace anonymous

PYBIND11_MODULE( _core, m )
{
    m.doc() = "partial isometries, their composition and partially defined isometries between Hilbert modules";

    py::register_exception< Error >( m, "Error", PyExc_ValueError );
    py::register_exception< ShapeMismatch >( m, "ShapeMismatch", m.attr( "Error" ).ptr() );
    py::register_exception< NotPartialIsometry >( m, "NotPartialIsometry", m.attr( "Error" ).ptr() );
    py::register_exception< NotContraction >( m, "NotContraction", m.attr( "Error" ).ptr() );
    py::register_exception< io::ParseError >( m, "ParseError", m.attr( "Error" ).ptr() );

    m.def( "classify", [] ( const Array & a, double tol ) { return class_dict( classify( to_matrix( a ), tolerance( tol ) ) ); },
           py::arg( "a" ), py::arg( "tol" ) = 1e-9 );

    m.def( "product_criterion",
           [] ( const Array & v, const Array & w, double tol ) {
               const auto  pc = product_criterion( to_matrix( v ), to_matrix( w ), tolerance( tol ) );
               py::dict    d;

               d["product_is_pi"]       = pc.product_is_pi;
               d["idempotent"]          = pc.idempotent;
               d["projection"]          = pc.projection;
               d["projections_commute"] = pc.projections_commute;
               d["consistent"]          = pc.consistent();
               return d;
           },
           py::arg( "v" ), py::arg( "w" ), py::arg( "tol" ) = 1e-9 );

    m.def( "nearest_partial_isometry",
           [] ( const Array & a, double tol ) { return to_array( nearest_partial_isometry( to_matrix( a ), tolerance( tol ) ) ); },
           py::arg( "a" ), py::arg( "tol" ) = 1e-9 );

    m.def( "contained_partial_isometry",
           [] ( const Array & c, double tol ) {
               const auto  r = contained_partial_isometry( to_matrix( c ), tolerance( tol ) );

               return py::make_tuple( to_array( r.v ), to_array( r.p_c ) );
           },
           py::arg( "c" ), py::arg( "tol" ) = 1e-9, "(c p_c, p_c)" );

    m.def( "dot_compose",
           [] ( const Array & v, const Array & w, double tol ) {
               const auto [ vw, p ] = dot_compose_with_domain( to_matrix( v ), to_matrix( w ), tolerance( tol ) );

               return py::make_tuple( to_array( vw ), to_array( p ) );
           },
           py::arg( "v" ), py::arg( "w" ), py::arg( "tol" ) = 1e-9, "(v.w, p_{v,w})" );

    // partial functions as {source label: target label} dicts over label lists
    m.def( "partial_function_matrix",
           [] ( const std::vector< std::string > & source, const std::vector< std::string > & target,
                const std::map< std::string, std::string > & mapping ) {
               return to_array( to_partial_isometry( PartialFn( FiniteSet( source ), FiniteSet( target ), mapping ) ) );
           },
           py::arg( "source" ), py::arg( "target" ), py::arg( "mapping" ) );

    m.def( "compose_partial_functions",
           [] ( const py::object & f, const py::object & g ) {
               return json_to_python( io::to_json(
                   compose_pdf( io::partial_fn_from_json( python_to_json( f ) ), io::partial_fn_from_json( python_to_json( g ) ) ) ) );
           },
           py::arg( "f" ), py::arg( "g" ), "f o g for partial functions in the JSON file layout" );

    // module-level operations on documents in the JSON file layout
    m.def( "contained_pdi",
           [] ( const py::object & c, double tol ) {
               const auto  t = tolerance( tol );

               return json_to_python( io::to_json( contained_pdi( io::module_map_from_json( python_to_json( c ), t ), t ) ) );
           },
           py::arg( "module_map" ), py::arg( "tol" ) = 1e-9 );

    m.def( "compose_pdi",
           [] ( const py::object & v, const py::object & w, double tol ) {
               const auto  t = tolerance( tol );

               return json_to_python(
                   io::to_json( compose_pdi( io::pdi_from_json( python_to_json( v ), t ), io::pdi_from_json( python_to_json( w ), t ), t ) ) );
           },
           py::arg( "v" ), py::arg( "w" ), py::arg( "tol" ) = 1e-9 );

    m.def( "final_proposition_check",
           [] ( const py::object & v, const py::object & w, double tol ) {
               const auto  t = tolerance( tol );
               const auto  r = final_proposition_check( io::module_map_from_json( python_to_json( v ), t ),
                                                        io::module_map_from_json( python_to_json( w ), t ), t );

               return py::make_tuple( r.holds, r.comparison.domain_residual, r.comparison.map_residual );
           },
           py::arg( "v" ), py::arg( "w" ), py::arg( "tol" ) = 1e-9, "(holds, domain residual, map residual)" );

    m.def( "hilbert_space_map",
           [] ( const Array & a ) {
               const auto  c = to_matrix( a );

               return json_to_python( io::to_json( ModuleMap::from_lift( HilbertModule::hilbert_space( c.cols() ),
                                                                         HilbertModule::hilbert_space( c.rows() ), c ) ) );
           },
           py::arg( "a" ), "the matrix as a map between Hilbert spaces, in the JSON file layout" );

    m.def( "verify",
           [] ( const std::string & suite, std::size_t trials, std::size_t dim, std::uint64_t seed, double tol, unsigned jobs ) {
               suites::SuiteConfig  cfg;

               cfg.suite  = suite;
               cfg.trials = trials;
               cfg.dim    = dim;
               cfg.seed   = seed;
               cfg.tol    = tolerance( tol );
               cfg.jobs   = jobs;

               suites::Report  rep;
               {
                   py::gil_scoped_release  nogil;

                   rep = suites::run( cfg );
               }
               return json_to_python( rep.to_json() );
           },
           py::arg( "suite" ) = "all", py::arg( "trials" ) = 100, py::arg( "dim" ) = 4, py::arg( "seed" ) = 0,
           py::arg( "tol" ) = 1e-9, py::arg( "jobs" ) = 1, "run property suites; returns the JSON report as a dict" );

    m.attr( "suite_names" ) = suites::suite_names();
}
