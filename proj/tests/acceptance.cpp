//
// Acceptance run: one line per criterion, PASS or FAIL, with the measured
// worst case next to its pinned threshold. Exit status 1 if any line fails.
//

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "piso/pdf.hpp"
#include "piso/pdi.hpp"
#include "piso/random.hpp"

using namespace piso;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict
{
    bool         pass = true;
    std::string  detail;
};

double
seconds_since ( Clock::time_point t0 )
{
    return std::chrono::duration< double >( Clock::now() - t0 ).count();
}

std::string
fmt ( const char * f, auto... args )
{
    char  buf[1024];

    std::snprintf( buf, sizeof( buf ), f, args... );
    return buf;
}

ComplexMatrix
unit_in ( random::Engine & rng, const ComplexMatrix & basis )
{
    auto  x = basis * random::gaussian( rng, basis.cols(), 1 );

    return ( 1.0 / frobenius_norm( x ) ) * x;
}

double
inner_gap ( const ComplexMatrix & cx, const ComplexMatrix & x )
{
    return frobenius_distance( adjoint( cx ) * cx, adjoint( x ) * x );
}

//////////////////////////////////////////////////////////////////////

Verdict
criterion_1 ()
{
    constexpr int     pairs     = 500;
    constexpr double  threshold = 1e-8;
    constexpr double  limit_s   = 10;

    random::Engine  rng( 1001 );
    const auto      t0 = Clock::now();
    int             disagree = 0, commuting = 0, product_pi = 0;
    double          worst = 0;

    for ( int k = 0; k < pairs; ++k )
    {
        const auto  r    = random::uniform_index( rng, 2, 6 );
        const auto  m    = random::uniform_index( rng, 2, 6 );
        const auto  c    = random::uniform_index( rng, 2, 6 );
        const bool  comm = random::coin( rng, 0.3 );

        const auto [ v, w ] = comm ? random::commuting_pair( rng, r, m, c )
                                   : std::pair{ random::partial_isometry( rng, r, m ), random::partial_isometry( rng, m, c ) };
        const auto  pc = product_criterion( v, w );

        commuting += comm;
        product_pi += pc.product_is_pi;
        disagree += ! pc.consistent();

        if ( pc.product_is_pi )       worst = std::max( worst, pc.product_residual );
        if ( pc.idempotent )          worst = std::max( worst, pc.idempotent_residual );
        if ( pc.projection )          worst = std::max( worst, pc.selfadjoint_residual );
        if ( pc.projections_commute ) worst = std::max( worst, pc.commutator_residual );
    }

    const double  s = seconds_since( t0 );

    return { disagree == 0 && worst <= threshold && s < limit_s,
             fmt( "%d pairs (%d forced commuting, %d with vw a partial isometry), %d disagreements, "
                  "max residual %.2e <= %.0e, %.2f s < %.0f s",
                  pairs, commuting, product_pi, disagree, worst, threshold, s, limit_s ) };
}

Verdict
criterion_2 ()
{
    constexpr int     contractions = 300;
    constexpr int     subprojections = 100;
    constexpr int     outside = 100;
    constexpr double  threshold = 1e-8;
    constexpr double  limit_s   = 10;

    random::Engine  rng( 1002 );
    const auto      t0 = Clock::now();
    double          worst = 0, worst_sub = 0, least_out = INFINITY;
    int             order_fail = 0, subs = 0, outs = 0, out_pass = 0;

    for ( int k = 0; k < contractions; ++k )
    {
        const auto  r    = random::uniform_index( rng, 2, 6 );
        const auto  c    = random::uniform_index( rng, 2, 6 );
        const auto  ones = random::uniform_index( rng, 0, std::min( r, c ) );
        const auto  a    = random::contraction( rng, r, c, ones );
        const auto  cpi  = contained_partial_isometry( a );

        worst = std::max( worst, frobenius_distance( adjoint( cpi.v ) * cpi.v, cpi.p_c ) );
        order_fail += ! psd_order_leq( cpi.p_c, adjoint( a ) * a );

        if ( subs < subprojections && ! cpi.subspace.is_zero() )
        {
            const auto  q  = random::subprojection( rng, cpi.subspace.basis(), random::uniform_index( rng, 1, cpi.subspace.dim() ) );
            const auto  cq = a * q;

            worst_sub = std::max( worst_sub, frobenius_distance( adjoint( cq ) * cq, q ) );
            ++subs;
        }

        const auto  out = orthogonal_complement( cpi.subspace );

        if ( outs < outside && ! out.is_zero() )
        {
            const double  beta = random::uniform_real( rng, 0.1, 1.0 );
            auto          d    = beta * unit_in( rng, out.basis() );

            if ( ! cpi.subspace.is_zero() )
                d += std::sqrt( 1 - beta * beta ) * unit_in( rng, cpi.subspace.basis() );

            const auto  q   = d * adjoint( d );
            const auto  cq  = a * q;
            const auto  res = frobenius_distance( adjoint( cq ) * cq, q );

            least_out = std::min( least_out, res );
            out_pass += res <= threshold;
            ++outs;
        }
    }

    const double  s = seconds_since( t0 );

    return { worst <= threshold && order_fail == 0 && subs == subprojections && worst_sub <= threshold && outs == outside
                 && out_pass == 0 && s < limit_s,
             fmt( "%d contractions: max |(cp)*(cp) - p| %.2e, %d order failures; %d subprojections max %.2e; "
                  "%d outside projections, smallest residual %.2e > %.0e; %.2f s < %.0f s",
                  contractions, worst, order_fail, subs, worst_sub, outs, least_out, threshold, s, limit_s ) };
}

Verdict
criterion_3 ()
{
    constexpr int     triples   = 300;
    constexpr double  threshold = 1e-7;
    constexpr double  limit_s   = 20;

    random::Engine  rng( 1003 );
    const auto      t0 = Clock::now();
    double          worst = 0;

    for ( int k = 0; k < triples; ++k )
    {
        std::size_t  d[4];

        for ( auto & x : d )
            x = random::uniform_index( rng, 2, 5 );

        const auto  u = random::partial_isometry( rng, d[0], d[1] );
        const auto  v = random::partial_isometry( rng, d[1], d[2] );
        const auto  w = random::partial_isometry( rng, d[2], d[3] );

        worst = std::max( worst, frobenius_distance( dot_compose( dot_compose( u, v ), w ), dot_compose( u, dot_compose( v, w ) ) ) );
    }

    const double  s = seconds_since( t0 );

    return { worst <= threshold && s < limit_s,
             fmt( "%d triples, max |(u.v).w - u.(v.w)| %.2e <= %.0e, %.2f s < %.0f s", triples, worst, threshold, s, limit_s ) };
}

Verdict
criterion_4 ()
{
    constexpr int     random_cases = 1000;
    constexpr double  limit_s      = 5;

    const auto  t0 = Clock::now();
    long        cases = 0;
    double      worst_product = 0, worst_dot = 0;

    auto  check = [&] ( const PartialFn & f, const PartialFn & g ) {
        const auto  vf  = to_partial_isometry( f );
        const auto  vg  = to_partial_isometry( g );
        const auto  vfg = to_partial_isometry( compose_pdf( f, g ) );

        worst_product = std::max( worst_product, frobenius_distance( vfg, vf * vg ) );
        worst_dot     = std::max( worst_dot, frobenius_distance( vfg, dot_compose( vf, vg ) ) );
        ++cases;
    };

    for ( std::size_t na = 0; na <= 3; ++na )
        for ( std::size_t nb = 0; nb <= 3; ++nb )
            for ( std::size_t nc = 0; nc <= 3; ++nc )
            {
                const auto  a = make_labels( "a", na );
                const auto  b = make_labels( "b", nb );
                const auto  c = make_labels( "c", nc );

                for ( const auto & f : all_injective_partial_functions( b, a ) )
                    for ( const auto & g : all_injective_partial_functions( c, b ) )
                        check( f, g );
            }

    const long  exhaustive = cases;

    random::Engine  rng( 1004 );

    for ( int k = 0; k < random_cases; ++k )
    {
        const auto  a = make_labels( "a", random::uniform_index( rng, 0, 6 ) );
        const auto  b = make_labels( "b", random::uniform_index( rng, 0, 6 ) );
        const auto  c = make_labels( "c", random::uniform_index( rng, 0, 6 ) );

        check( random::partial_function( rng, b, a ), random::partial_function( rng, c, b ) );
    }

    const double  s = seconds_since( t0 );

    return { worst_product == 0.0 && worst_dot == 0.0 && s < limit_s,
             fmt( "%ld exhaustive pairs (sizes <= 3) + %d random (sizes <= 6): max |v(fg) - v(f)v(g)| = %.1e, "
                  "max |v(fg) - v(f).v(g)| = %.1e, both required 0; %.2f s < %.0f s",
                  exhaustive, random_cases, worst_product, worst_dot, s, limit_s ) };
}

Verdict
criterion_5 ()
{
    constexpr int     wanted    = 500;
    constexpr double  threshold = 1e-8;
    const Tolerance   tol;

    random::Engine  rng( 1005 );
    int             accepted = 0, oblique_tried = 0, oblique_accepted = 0, modules = 0;
    double          worst = 0, worst_idem = 0, worst_orth = 0, worst_obl = 0, worst_ratio = 0;

    auto  consider = [&] ( const ComplexMatrix & e, bool oblique ) {
        const double  n = operator_norm( e );

        oblique_tried += oblique;
        if ( n > 1.0 + tol.eq || frobenius_distance( e * e, e ) > threshold )
            return;

        const double  asym = frobenius_distance( e, adjoint( e ) );

        oblique_accepted += oblique;
        worst_idem = std::max( worst_idem, frobenius_distance( e * e, e ) );
        worst      = std::max( worst, asym );
        ( oblique ? worst_obl : worst_orth ) = std::max( oblique ? worst_obl : worst_orth, asym );

        // exact idempotents satisfy ‖e − e*‖ = sqrt(‖e‖² − 1) in operator norm
        if ( oblique && n * n - 1 > 1e-14 )
            worst_ratio = std::max( worst_ratio, operator_norm( e - adjoint( e ) ) / std::sqrt( n * n - 1 ) );
        ++accepted;
    };

    while ( accepted < wanted )
    {
        const int  kind = accepted % 3;

        if ( kind == 0 )
        {
            // u p u*, u a random unitary
            const auto  n = random::uniform_index( rng, 2, 6 );
            const auto  u = random::unitary( rng, n );

            consider( u * random::subprojection( rng, ComplexMatrix::identity( n ), random::uniform_index( rng, 0, n ) ) * adjoint( u ),
                      false );
        }
        else if ( kind == 1 )
        {
            // s p s⁻¹ with s near the identity; kept only if the norm test admits it
            const auto  n   = random::uniform_index( rng, 2, 6 );
            const auto  k   = random::uniform_index( rng, 1, n - 1 );
            const auto  p   = random::subprojection( rng, ComplexMatrix::identity( n ), k );
            const auto  g   = random::gaussian( rng, n, n );
            const auto  eps = std::pow( 10.0, random::uniform_real( rng, -12, -1 ) );
            const auto  s   = ComplexMatrix::identity( n ) + ( eps / frobenius_norm( g ) ) * g;

            consider( s * p * pseudo_inverse( s ), true );

            // and the orthogonal projection onto the same range, which always qualifies
            consider( orthogonal_projection( column_span( s * p ) ), false );
        }
        else
        {
            // right linear idempotent on a module: a unitary conjugate of π_v
            const auto  alg = random::algebra( rng, 3, 3 );
            const auto  e   = random::module( rng, alg, 8 );
            const auto  v   = random::module_map( rng, e, e, random::MapKind::partial_isometry );
            const auto  u   = random::module_map( rng, e, e, random::MapKind::isometry );
            const auto  pv  = is_partial_isometry_mod( v );
            const auto  pi  = compose( compose( u, *pv.initial_projection ), adjoint( u ) );

            consider( pi.lift(), false );
            ++modules;
        }
    }

    return { worst <= threshold,
             fmt( "%d contractive idempotents (norm <= 1 + %.0e; %d on modules; %d of %d oblique candidates admitted), "
                  "max |e^2 - e| %.2e, max |e - e*| %.2e <= %.0e (orthogonal constructions %.2e, admitted oblique %.2e, "
                  "which track sqrt(|e|^2 - 1) to ratio %.3f)",
                  accepted, tol.eq, modules, oblique_accepted, oblique_tried, worst_idem, worst, threshold, worst_orth, worst_obl,
                  worst_ratio ) };
}

Verdict
criterion_6 ()
{
    constexpr int     pairs   = 300;
    constexpr double  limit_s = 30;

    random::Engine  rng( 1006 );
    const auto      t0 = Clock::now();
    int             disagree = 0, yes = 0;

    for ( int k = 0; k < pairs; ++k )
    {
        const auto  alg  = random::algebra( rng, 3, 3 );
        const auto  d    = random::module( rng, alg, 8 );
        const auto  e    = random::module( rng, alg, 8 );
        const auto  f    = random::module( rng, alg, 8 );
        const bool  comm = random::coin( rng, 0.3 );

        const auto [ v, w ] = comm ? random::commuting_module_pair( rng, d, e, f )
                                   : std::pair{ random::module_map( rng, e, f, random::MapKind::partial_isometry ),
                                                random::module_map( rng, d, e, random::MapKind::partial_isometry ) };
        const auto  ic = product_invariance_criterion( v, w );

        disagree += ! ic.consistent();
        yes += ic.product_is_pi;
    }

    const double  s = seconds_since( t0 );

    return { disagree == 0 && s < limit_s,
             fmt( "%d pairs (1-3 blocks of size <= 3, lift <= 8), %d with vw a partial isometry, %d disagreements, "
                  "%.2f s < %.0f s",
                  pairs, yes, disagree, s, limit_s ) };
}

Verdict
criterion_7 ()
{
    constexpr int     contractions = 200;
    constexpr int     elements     = 20;
    constexpr double  closure_tol  = 1e-8;
    constexpr double  cross_tol    = 1e-8;
    const Tolerance   tol;

    random::Engine  rng( 1007 );
    double          worst_closure = 0, worst_add = 0, worst_margin = 0, worst_cross = 0;
    int             not_pi = 0;

    for ( int k = 0; k < contractions; ++k )
    {
        const auto  alg = random::algebra( rng, 3, 3 );
        const auto  e   = random::module( rng, alg, 8 );
        const auto  f   = random::module( rng, alg, 8 );
        const auto  c   = random::module_map( rng, e, f, random::MapKind::contraction );
        const auto  r   = contained_partial_isometry_mod( c );

        worst_closure = std::max( worst_closure, r.isometric.closure_residual() );

        const auto &  q = r.isometric.span().basis();

        if ( q.cols() > 0 )
        {
            const auto  x = unvec( vec( q * random::gaussian( rng, q.cols(), 1 ) ), e.lift_dim(), alg.dim() );
            const auto  y = unvec( vec( q * random::gaussian( rng, q.cols(), 1 ) ), e.lift_dim(), alg.dim() );
            const auto  s = x + y;
            const auto  n = std::max( 1.0, frobenius_norm( s ) * frobenius_norm( s ) );

            worst_add = std::max( { worst_add, inner_gap( c.apply( s ), s ) / n, r.isometric.distance( s ) } );
        }

        const auto  pv = is_partial_isometry_mod( r.v );

        if ( ! pv.is_partial_isometry )
        {
            ++not_pi;
            continue;
        }

        for ( int j = 0; j < elements; ++j )
        {
            const auto  x = random::element( rng, e );

            worst_margin = std::max( worst_margin, -domination_margin( c, *pv.initial_projection, x )
                                                       / std::max( 1.0, frobenius_norm( x ) * frobenius_norm( x ) ) );
        }
        worst_cross = std::max( worst_cross, cross_term_residual( c, r.p_c ) );
    }

    return { worst_closure <= closure_tol && worst_add <= 10 * tol.eq && not_pi == 0 && worst_margin <= 10 * tol.eq
                 && worst_cross <= cross_tol,
             fmt( "%d module contractions: right-multiplication closure %.2e <= %.0e, addition %.2e <= %.0e, "
                  "%d maps c o p_c failing the partial isometry test, domination deficit %.2e <= %.0e on %d elements each, "
                  "cross terms %.2e <= %.0e",
                  contractions, worst_closure, closure_tol, worst_add, 10 * tol.eq, not_pi, std::max( 0.0, worst_margin ),
                  10 * tol.eq, elements, worst_cross, cross_tol ) };
}

Verdict
criterion_8 ()
{
    constexpr int     pairs     = 200;
    constexpr double  threshold = 1e-8;

    random::Engine  rng( 1008 );
    int             fail = 0;
    double          worst = 0, worst_map = 0;

    for ( int k = 0; k < pairs; ++k )
    {
        const auto  alg = random::algebra( rng, 3, 3 );
        const auto  d   = random::module( rng, alg, 8 );
        const auto  e   = random::module( rng, alg, 8 );
        const auto  f   = random::module( rng, alg, 8 );
        const auto  v   = random::module_map( rng, e, f, random::MapKind::partial_isometry );
        const auto  w   = random::module_map( rng, d, e, random::MapKind::partial_isometry );
        const auto  r   = final_proposition_check( v, w );

        fail += ! r.holds;
        worst     = std::max( worst, r.comparison.domain_residual );
        worst_map = std::max( worst_map, r.comparison.map_residual );
    }

    return { fail == 0 && worst <= threshold,
             fmt( "%d pairs, %d failures, domain inclusion residual %.2e <= %.0e, map residual %.2e", pairs, fail, worst,
                  threshold, worst_map ) };
}

Verdict
criterion_9 ()
{
    constexpr double  threshold = 1e-12;

    // Hilbert space: c = diag(1, 1/2) has p_c = diag(1, 0)
    const auto  c   = ComplexMatrix::diagonal( { 1.0, 0.5 } );
    const auto  hp  = contained_partial_isometry( c );
    const auto  r1  = frobenius_distance( hp.p_c, ComplexMatrix::diagonal( { 1.0, 0.0 } ) );

    // module: M_2 over itself, c = left multiplication by diag(1, 1/2);
    // P_c is the matrices with zero second row
    const CStarAlgebra  m2( { 2 } );
    const auto          e  = HilbertModule::algebra_module( m2 );
    const auto          cm = ModuleMap::from_lift( e, e, c );
    const auto          mp = contained_partial_isometry_mod( cm );

    ComplexMatrix  e11( 2, 2 ), e12( 2, 2 );

    e11( 0, 0 ) = 1;
    e12( 0, 1 ) = 1;

    const std::vector< ComplexMatrix >  top{ e11, e12 };
    const auto                          expect = Submodule::generated_by( e, top );
    const double r2 = std::max( inclusion_residual( mp.isometric, expect ), inclusion_residual( expect, mp.isometric ) );
    const bool   d2 = mp.isometric.dim() == 2;

    // v = diag(1, 0), w = all ½: v·w = 0 and p_{v,w} = 0
    const auto  v        = ComplexMatrix::diagonal( { 1.0, 0.0 } );
    const auto  w        = ComplexMatrix{ { 0.5, 0.5 }, { 0.5, 0.5 } };
    const auto [ vw, p ] = dot_compose_with_domain( v, w );
    const double r3      = std::max( frobenius_norm( vw ), frobenius_norm( p ) );

    return { r1 <= threshold && r2 <= threshold && d2 && r3 <= threshold,
             fmt( "p_c of diag(1, 0.5) off diag(1, 0) by %.1e; module P_c of dimension %zu off the zero-second-row "
                  "matrices by %.1e; |v.w| + |p_{v,w}| for diag(1,0), all-1/2 = %.1e; all <= %.0e",
                  r1, mp.isometric.dim(), r2, r3, threshold ) };
}

Verdict
criterion_10 ()
{
    constexpr int     cases     = 100;
    constexpr double  threshold = 1e-8;

    random::Engine  rng( 1010 );
    double          worst = 0;
    int             mismatched = 0;

    for ( int k = 0; k < cases; ++k )
    {
        const auto  n  = random::uniform_index( rng, 1, 6 );
        const auto  m  = random::uniform_index( rng, 1, 6 );
        const auto  l  = random::uniform_index( rng, 1, 6 );
        const auto  hn = HilbertModule::hilbert_space( n );
        const auto  hm = HilbertModule::hilbert_space( m );
        const auto  hl = HilbertModule::hilbert_space( l );
        const auto  a  = random::contraction( rng, m, n, random::uniform_index( rng, 0, std::min( m, n ) ) );
        const auto  v  = random::partial_isometry( rng, l, m );
        const auto  w  = random::partial_isometry( rng, m, n );

        const auto  c   = ModuleMap::from_lift( hn, hm, a );
        const auto  cpi = contained_partial_isometry( a );
        const auto  mpi = contained_partial_isometry_mod( c );

        worst = std::max( { worst, frobenius_distance( c.action(), a ), frobenius_distance( mpi.p_c.lift(), cpi.p_c ),
                            frobenius_distance( mpi.v.lift(), cpi.v ),
                            frobenius_distance( orthogonal_projection( mpi.isometric.span() ), cpi.p_c ) } );

        const auto  mv = ModuleMap::from_lift( hm, hl, v );
        const auto  mw = ModuleMap::from_lift( hn, hm, w );
        const auto  ic = product_invariance_criterion( mv, mw );
        const auto  pc = product_criterion( v, w );
        const auto [ vw, p ] = dot_compose_with_domain( v, w );
        const auto  dot_mod  = contained_partial_isometry_mod( compose( mv, mw ) );

        worst = std::max( { worst, frobenius_distance( dot_mod.v.lift(), vw ), frobenius_distance( dot_mod.p_c.lift(), p ) } );

        mismatched += ic.product_is_pi != pc.product_is_pi;
        mismatched += is_partial_isometry_mod( c ).is_partial_isometry != classify( a ).is_partial_isometry;
        mismatched += is_partial_isometry_mod( mv ).is_partial_isometry != classify( v ).is_partial_isometry;
    }

    return { worst <= threshold && mismatched == 0,
             fmt( "%d cases over one block of size 1: max deviation from the Hilbert space results %.2e <= %.0e, "
                  "%d verdict mismatches",
                  cases, worst, threshold, mismatched ) };
}

}// namespace anonymous

int
main ()
{
    const std::vector< std::pair< const char *, std::function< Verdict () > > >  criteria{
        { "product criterion: four conditions agree", criterion_1 },
        { "isometric subspace of a contraction", criterion_2 },
        { "dot composition is associative", criterion_3 },
        { "partial functions: functor is exact", criterion_4 },
        { "contractive idempotents are projections", criterion_5 },
        { "module product iff invariant range", criterion_6 },
        { "contained partial isometry of a module contraction", criterion_7 },
        { "contained pdi of a product is the composition", criterion_8 },
        { "hand-worked fixtures", criterion_9 },
        { "scalar algebra specializes to Hilbert space", criterion_10 },
    };

    int  failed = 0;

    for ( std::size_t k = 0; k < criteria.size(); ++k )
    {
        Verdict  v;

        try
        {
            v = criteria[k].second();
        }
        catch ( const std::exception & e )
        {
            v = { false, std::string( "exception: " ) + e.what() };
        }

        failed += ! v.pass;
        std::printf( "%s %2zu  %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.c_str() );
        std::fflush( stdout );
    }

    std::printf( "%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size() );
    return failed == 0 ? 0 : 1;
}
