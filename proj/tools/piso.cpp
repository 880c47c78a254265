#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "piso/io.hpp"
#include "piso/partial_isometry.hpp"
#include "piso/suites.hpp"

using namespace piso;

namespace {

enum Exit : int
{
    exit_pass    = 0,
    exit_failure = 1,
    exit_parse   = 2,
    exit_shape   = 3,
    exit_precond = 4,
    exit_usage   = 64,
};

class UsageError : public Error { public: using Error::Error; };

struct Options
{
    std::optional< double >  tol;
};

Tolerance
tolerance ( const Options & opt )
{
    Tolerance  t;

    if ( const char * env = std::getenv( "PISO_TOL" ); env && *env )
    {
        char *  end = nullptr;

        t.eq = std::strtod( env, &end );
        if ( *end != '\0' )
            throw UsageError( std::string( "PISO_TOL: not a number: " ) + env );
    }
    if ( opt.tol )
        t.eq = *opt.tol;

    try
    {
        t.validate();
    }
    catch ( const InvalidValue & e )
    {
        throw UsageError( e.what() );
    }
    return t;
}

// loading errors of any kind are reported as malformed input
io::Object
load ( const std::string & path, const Tolerance & tol )
{
    try
    {
        return io::from_json( io::read_file( path ), tol );
    }
    catch ( const io::ParseError & )
    {
        throw;
    }
    catch ( const Error & e )
    {
        throw io::ParseError( path + ": " + e.what() );
    }
}

template < class T >
const T &
expect ( const io::Object & o, const std::string & path, const char * what )
{
    if ( ! std::holds_alternative< T >( o ) )
        throw io::ParseError( path + ": expected " + what );
    return std::get< T >( o );
}

void
print_matrix ( const ComplexMatrix & a, const char * indent = "  " )
{
    for ( std::size_t i = 0; i < a.rows(); ++i )
    {
        std::cout << indent;
        for ( std::size_t j = 0; j < a.cols(); ++j )
        {
            const auto  z = a( i, j );
            const auto  re = std::abs( z.real() ) < 1e-14 ? 0.0 : z.real();
            const auto  im = std::abs( z.imag() ) < 1e-14 ? 0.0 : z.imag();
            char        buf[64];

            if ( im == 0.0 )
                std::snprintf( buf, sizeof( buf ), "%10.6g", re );
            else
                std::snprintf( buf, sizeof( buf ), "%10.6g%+.6gi", re, im );
            std::cout << buf << ( j + 1 < a.cols() ? "  " : "" );
        }
        std::cout << '\n';
    }
}

std::string
yes_no ( bool b )
{
    return b ? "yes" : "no";
}

void
emit ( const io::Json & j, const std::string & out )
{
    if ( out.empty() )
        std::cout << j.dump( 2 ) << '\n';
    else
        io::write_file( out, j );
}

//////////////////////////////////////////////////////////////////////
//
// classify
//

int
cmd_classify ( const std::string & path, const Options & opt )
{
    const auto  tol = tolerance( opt );
    const auto  obj = load( path, tol );

    if ( const auto * a = std::get_if< ComplexMatrix >( &obj ) )
    {
        const auto  c = classify( *a, tol );

        std::cout << describe( c ) << '\n';
        if ( c.is_partial_isometry )
        {
            std::cout << "initial projection:\n";
            print_matrix( adjoint( *a ) * *a );
        }
        return exit_pass;
    }

    if ( const auto * f = std::get_if< PartialFn >( &obj ) )
    {
        std::cout << describe( classify_pdf( *f ) ) << '\n';
        std::cout << "initial projection:\n";

        const auto  v = to_partial_isometry( *f );

        print_matrix( adjoint( v ) * v );
        return exit_pass;
    }

    if ( const auto * c = std::get_if< ModuleMap >( &obj ) )
    {
        if ( ! c->is_contraction( tol ) )
        {
            std::cout << "not a contraction (norm " << c->norm() << ")\n";
            return exit_pass;
        }

        const auto  pv = is_partial_isometry_mod( *c, tol );

        if ( ! pv.is_partial_isometry )
            std::cout << "contraction; not a partial isometry\n";
        else if ( is_isometry_mod( *c, tol ) && is_coisometry_mod( *c, tol ) )
            std::cout << "unitary\n";
        else if ( is_isometry_mod( *c, tol ) )
            std::cout << "isometry\n";
        else if ( is_coisometry_mod( *c, tol ) )
            std::cout << "coisometry\n";
        else
            std::cout << "partial isometry\n";

        if ( pv.is_partial_isometry )
        {
            std::cout << "initial projection (lift):\n";
            print_matrix( pv.initial_projection->lift() );
        }
        return exit_pass;
    }

    throw io::ParseError( path + ": expected a matrix, partial function or module map" );
}

//////////////////////////////////////////////////////////////////////
//
// compose
//

int
compose_matrices ( ComplexMatrix v, ComplexMatrix w, const std::string & mode, bool reproject, const std::string & out,
                   const Tolerance & tol )
{
    if ( v.cols() != w.rows() )
        throw ShapeMismatch( "cannot compose " + shape_string( v ) + " with " + shape_string( w ) );

    if ( reproject )
    {
        v = nearest_partial_isometry( v, tol );
        w = nearest_partial_isometry( w, tol );
    }

    const auto  pc = product_criterion( v, w, tol );

    if ( mode == "product" )
    {
        std::cout << "product already partial isometry: " << yes_no( pc.product_is_pi ) << '\n'
                  << "  v*v ww* idempotent:  " << yes_no( pc.idempotent ) << '\n'
                  << "  v*v ww* projection:  " << yes_no( pc.projection ) << '\n'
                  << "  v*v, ww* commute:    " << yes_no( pc.projections_commute ) << '\n';
        emit( io::to_json( v * w ), out );
        return exit_pass;
    }

    const auto [ vw, p ] = dot_compose_with_domain( v, w, tol );
    const auto  rank = column_span( p, tol ).dim();

    if ( rank == 0 )
        std::cout << "p_{v,w} = 0\n";
    else
        std::cout << "p_{v,w} has rank " << rank << '\n';
    std::cout << "product already partial isometry: " << yes_no( pc.product_is_pi ) << '\n';
    emit( io::to_json( vw ), out );
    return exit_pass;
}

int
cmd_compose ( const std::string & pv, const std::string & pw, const std::string & mode, bool reproject,
              const std::string & out, const Options & opt )
{
    const auto  tol = tolerance( opt );
    const auto  v   = load( pv, tol );
    const auto  w   = load( pw, tol );

    if ( mode == "pdi" )
    {
        const auto &  a = expect< PDI >( v, pv, "a partially defined isometry" );
        const auto &  b = expect< PDI >( w, pw, "a partially defined isometry" );
        const auto    r = compose_pdi( a, b, tol );

        std::cout << "domain dimension " << r.domain.dim() << " (of " << b.domain.dim() << ")\n";
        emit( io::to_json( r ), out );
        return exit_pass;
    }

    if ( std::holds_alternative< ComplexMatrix >( v ) )
        return compose_matrices( std::get< ComplexMatrix >( v ), expect< ComplexMatrix >( w, pw, "a matrix" ), mode, reproject,
                                 out, tol );

    if ( const auto * f = std::get_if< PartialFn >( &v ) )
    {
        const auto &  g  = expect< PartialFn >( w, pw, "a partial function" );
        const auto    fg = compose_pdf( *f, g );

        std::cout << "product already partial isometry: yes\n";
        emit( io::to_json( fg ), out );
        return exit_pass;
    }

    if ( const auto * a = std::get_if< ModuleMap >( &v ) )
    {
        const auto &  b  = expect< ModuleMap >( w, pw, "a module map" );
        const auto    ic = product_invariance_criterion( *a, b, tol );
        const auto    ab = compose( *a, b, tol );

        std::cout << "product already partial isometry: " << yes_no( ic.product_is_pi ) << '\n'
                  << "  initial projection leaves wD invariant: " << yes_no( ic.range_invariant ) << '\n';

        if ( mode == "product" )
        {
            emit( io::to_json( ab ), out );
            return exit_pass;
        }

        const auto  r = contained_partial_isometry_mod( ab, tol );

        if ( r.isometric.is_zero() )
            std::cout << "p_{v,w} = 0\n";
        else
            std::cout << "p_{v,w} has range of dimension " << r.isometric.dim() << '\n';
        emit( io::to_json( r.v ), out );
        return exit_pass;
    }

    throw io::ParseError( pv + ": expected a matrix, partial function, module map or pdi" );
}

//////////////////////////////////////////////////////////////////////
//
// contained
//

int
cmd_contained ( const std::string & path, bool module, const std::string & out, const Options & opt )
{
    const auto  tol = tolerance( opt );
    const auto  obj = load( path, tol );

    if ( module || std::holds_alternative< ModuleMap >( obj ) )
    {
        const auto &  c = expect< ModuleMap >( obj, path, "a module map" );

        if ( ! c.is_contraction( tol ) )
            throw NotContraction( "module map norm exceeds 1 by " + sci( c.norm() - 1.0 ) );

        const auto  p = contained_pdi( c, tol );

        std::cout << "isometric submodule of dimension " << p.domain.dim() << " (module of dimension " << c.source().dim() << ")\n";
        emit( io::to_json( p ), out );
        return exit_pass;
    }

    const auto &  c = expect< ComplexMatrix >( obj, path, "a matrix" );
    const auto    r = contained_partial_isometry( c, tol );

    std::cout << "isometric subspace of dimension " << r.subspace.dim() << '\n' << "p_c:\n";
    print_matrix( r.p_c );
    emit( io::Json{ { "p_c", io::to_json( r.p_c ) }, { "v", io::to_json( r.v ) } }, out );
    return exit_pass;
}

//////////////////////////////////////////////////////////////////////
//
// verify
//

int
cmd_verify ( suites::SuiteConfig cfg, const std::string & json_out, bool timing, bool quiet, const Options & opt )
{
    cfg.tol = tolerance( opt );
    try
    {
        cfg.validate();
    }
    catch ( const InvalidValue & e )
    {
        throw UsageError( e.what() );
    }

    const auto  rep = suites::run( cfg );

    if ( json_out == "-" )
        std::cout << rep.to_json( timing ).dump( 2 ) << '\n';
    else
    {
        if ( ! quiet )
            std::cout << rep.table();
        if ( ! json_out.empty() )
            io::write_file( json_out, rep.to_json( timing ) );
    }

    if ( rep.passed() )
        return exit_pass;

    // counterexamples go to stderr so a JSON report on stdout stays parseable
    for ( const auto & s : rep.suites )
        for ( const auto & c : s.checks )
            for ( const auto & ce : c.counterexamples )
            {
                std::cerr << "FAIL " << s.name << " / " << c.name << ": trial " << ce.trial << ", seed " << ce.seed;
                if ( ! ce.message.empty() )
                    std::cerr << ": " << ce.message;
                std::cerr << "\n  replay: piso verify --suite " << s.name << " --dim " << cfg.dim << " --tol " << cfg.tol.eq
                          << " --trial-seed " << ce.seed << "\n  inputs: " << ce.inputs.dump() << '\n';
            }
    return exit_failure;
}

}// namespace anonymous

int
main ( int argc, char ** argv )
{
    CLI::App  app{ "partial isometries, contained partial isometries and their composition" };
    Options   opt;

    app.require_subcommand( 1 );
    app.add_option( "--tol", opt.tol, "equality tolerance (overrides PISO_TOL)" );

    std::string  file, file_w, mode = "dot", out, json_out;
    bool         reproject = false, module = false, timing = false, quiet = false;

    auto *  classify_cmd = app.add_subcommand( "classify", "classify an operator, partial function or module map" );
    classify_cmd->add_option( "file", file )->required();

    auto *  compose_cmd = app.add_subcommand( "compose", "compose v after w" );
    compose_cmd->add_option( "v", file )->required();
    compose_cmd->add_option( "w", file_w )->required();
    compose_cmd->add_option( "--mode", mode )->check( CLI::IsMember( { "product", "dot", "pdi" } ) );
    compose_cmd->add_option( "--out", out, "result file; stdout when omitted" );
    compose_cmd->add_flag( "--reproject", reproject, "replace matrix inputs by their nearest partial isometries" );

    auto *  contained_cmd = app.add_subcommand( "contained", "the partial isometry contained in a contraction" );
    contained_cmd->add_option( "file", file )->required();
    contained_cmd->add_flag( "--module", module, "input is a module map" );
    contained_cmd->add_option( "--out", out );

    suites::SuiteConfig  cfg;
    std::uint64_t        trial_seed = 0;

    auto *  verify_cmd = app.add_subcommand( "verify", "run property suites" );
    verify_cmd->add_option( "--suite", cfg.suite );
    verify_cmd->add_option( "--trials", cfg.trials );
    verify_cmd->add_option( "--dim", cfg.dim );
    verify_cmd->add_option( "--seed", cfg.seed );
    verify_cmd->add_option( "--jobs", cfg.jobs );
    auto *  ts = verify_cmd->add_option( "--trial-seed", trial_seed, "replay a single trial" );
    verify_cmd->add_option( "--json", json_out, "write the JSON report to a file, or - for stdout" );
    verify_cmd->add_flag( "--timing", timing, "include wall-clock time in the JSON report" );
    verify_cmd->add_flag( "--quiet", quiet, "no table" );

    for ( auto * sub : { classify_cmd, compose_cmd, contained_cmd, verify_cmd } )
        sub->add_option( "--tol", opt.tol, "equality tolerance (overrides PISO_TOL)" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp & e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError & e )
    {
        app.exit( e );
        return exit_usage;
    }

    try
    {
        if ( *classify_cmd )
            return cmd_classify( file, opt );
        if ( *compose_cmd )
            return cmd_compose( file, file_w, mode, reproject, out, opt );
        if ( *contained_cmd )
            return cmd_contained( file, module, out, opt );

        if ( *ts )
            cfg.trial_seed = trial_seed;
        return cmd_verify( cfg, json_out, timing, quiet, opt );
    }
    catch ( const UsageError & e )
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch ( const io::ParseError & e )
    {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    }
    catch ( const ShapeMismatch & e )
    {
        std::cerr << "shape mismatch: " << e.what() << '\n';
        return exit_shape;
    }
    catch ( const TargetSourceMismatch & e )
    {
        std::cerr << "shape mismatch: " << e.what() << '\n';
        return exit_shape;
    }
    catch ( const Error & e )
    {
        std::cerr << "precondition: " << e.what() << '\n';
        return exit_precond;
    }
}
