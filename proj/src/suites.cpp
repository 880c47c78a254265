#include "piso/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "piso/random.hpp"

namespace piso::suites {

namespace {

using io::Json;
using io::to_json;

constexpr std::size_t  max_counterexamples = 3;

struct Outcome
{
    std::string  check;
    bool         ok = true;
    double       residual = 0;
    std::string  message;
    Json         inputs;
};

class Trial
{
public:
    Trial ( const SuiteConfig & cfg, std::uint64_t seed )
        : rng( seed ), cfg( cfg ), tol( cfg.tol )
    {}

    // inputs are serialized only when the check fails
    void check ( const std::string & name, bool ok, double residual, const std::function< Json () > & inputs,
                 const std::string & message = {} )
    {
        Outcome  o{ name, ok, residual, {}, {} };

        if ( ! ok )
        {
            o.message = message;
            o.inputs  = inputs();
        }
        out.push_back( std::move( o ) );
    }

    std::size_t draw_dim ()
    {
        return random::uniform_index( rng, std::min< std::size_t >( 2, cfg.dim ), cfg.dim );
    }

    std::size_t max_block () const { return std::min< std::size_t >( 3, cfg.dim ); }
    std::size_t max_lift () const { return std::min< std::size_t >( 8, std::max< std::size_t >( 2, 2 * cfg.dim ) ); }

    random::Engine         rng;
    const SuiteConfig &    cfg;
    const Tolerance &      tol;
    std::vector< Outcome > out;
};

ComplexMatrix
random_unit ( random::Engine & rng, const ComplexMatrix & basis )
{
    auto  x = basis * random::gaussian( rng, basis.cols(), 1 );

    return ( 1.0 / frobenius_norm( x ) ) * x;
}

double
inner_gap ( const ComplexMatrix & cx, const ComplexMatrix & x )
{
    return frobenius_distance( adjoint( cx ) * cx, adjoint( x ) * x );
}

std::size_t
total ( const std::vector< std::size_t > & k )
{
    return std::accumulate( k.begin(), k.end(), std::size_t( 0 ) );
}

std::vector< std::size_t >
block_ranks ( const HilbertModule & e )
{
    std::vector< std::size_t >  k;

    for ( std::size_t i = 0; i < e.algebra().num_blocks(); ++i )
        k.push_back( random::block_range( e, i ).cols() );
    return k;
}

//////////////////////////////////////////////////////////////////////
//
// pilem: four conditions on products, adjoint symmetry, contractive idempotents
//

void
suite_pilem ( Trial & t )
{
    const auto  r    = t.draw_dim();
    const auto  m    = t.draw_dim();
    const auto  c    = t.draw_dim();
    const bool  comm = random::coin( t.rng, 0.3 );

    const auto [ v, w ] = comm ? random::commuting_pair( t.rng, r, m, c )
                               : std::pair{ random::partial_isometry( t.rng, r, m ), random::partial_isometry( t.rng, m, c ) };
    const auto  inputs = [&] { return Json{ { "v", to_json( v ) }, { "w", to_json( w ) }, { "commuting", comm } }; };

    const auto  pc    = product_criterion( v, w, t.tol );
    double      worst = 0;

    if ( pc.product_is_pi )       worst = std::max( worst, pc.product_residual );
    if ( pc.idempotent )          worst = std::max( worst, pc.idempotent_residual );
    if ( pc.projection )          worst = std::max( worst, pc.selfadjoint_residual );
    if ( pc.projections_commute ) worst = std::max( worst, pc.commutator_residual );

    t.check( "four conditions agree", pc.consistent(), worst, inputs,
             "product " + sci( pc.product_residual ) + ", idempotent " + sci( pc.idempotent_residual ) + ", selfadjoint "
             + sci( pc.selfadjoint_residual ) + ", commutator " + sci( pc.commutator_residual ) );

    const auto  vw  = v * w;
    const bool  sym = classify( v, t.tol ).is_partial_isometry == classify( adjoint( v ), t.tol ).is_partial_isometry
                      && classify( vw, t.tol ).is_partial_isometry == classify( adjoint( vw ), t.tol ).is_partial_isometry;

    t.check( "adjoint symmetry", sym, 0, inputs );

    if ( pc.product_is_pi )
    {
        const auto  vsv = adjoint( v ) * v;
        const auto  res = frobenius_distance( w * adjoint( w ) * vsv * w, vsv * w );

        t.check( "ww* v*v w = v*v w", res <= 10 * t.tol.eq, res, inputs );
    }

    // idempotents: a projection conjugated by a unitary near 1, and an
    // oblique s p s⁻¹ that the norm filter should discard
    const auto  n = t.draw_dim();
    const auto  k = random::uniform_index( t.rng, 0, n );
    const auto  p = random::subprojection( t.rng, ComplexMatrix::identity( n ), k );
    const auto  u = random::unitary_near_identity( t.rng, n, random::uniform_real( t.rng, 1e-3, 1e-1 ) );

    std::vector< ComplexMatrix >  candidates{ u * p * adjoint( u ) };

    if ( 0 < k && k < n )
    {
        const auto  g = random::gaussian( t.rng, n, n );
        const auto  s = ComplexMatrix::identity( n ) + ( random::uniform_real( t.rng, 1e-3, 1e-1 ) / frobenius_norm( g ) ) * g;

        candidates.push_back( s * p * pseudo_inverse( s ) );
    }

    for ( const auto & e : candidates )
    {
        if ( operator_norm( e ) > 1.0 + t.tol.eq )
            continue;

        const auto  res = frobenius_distance( e, adjoint( e ) );

        t.check( "contractive idempotent is selfadjoint", res <= 10 * t.tol.eq, res,
                 [&] { return Json{ { "e", to_json( e ) } }; } );
    }
}

//////////////////////////////////////////////////////////////////////
//
// clem: the isometric subspace of a contraction and its maximality
//

void
suite_clem ( Trial & t )
{
    const auto  r    = t.draw_dim();
    const auto  c    = t.draw_dim();
    const auto  ones = random::uniform_index( t.rng, 0, std::min( r, c ) );
    const auto  a    = random::contraction( t.rng, r, c, ones );
    const auto  inputs = [&] { return Json{ { "c", to_json( a ) } }; };

    const auto  cpi = contained_partial_isometry( a, t.tol );
    const auto  res = frobenius_distance( adjoint( cpi.v ) * cpi.v, cpi.p_c );

    t.check( "(cp)*(cp) = p", res <= 1e-8, res, inputs );
    t.check( "p <= c*c", psd_order_leq( cpi.p_c, adjoint( a ) * a, t.tol ), 0, inputs );
    t.check( "cp is a partial isometry", classify( cpi.v, t.tol ).is_partial_isometry, partial_isometry_residual( cpi.v ), inputs );
    t.check( "isometric subspace dimension", cpi.subspace.dim() == ones, 0, inputs,
             std::to_string( cpi.subspace.dim() ) + " vs " + std::to_string( ones ) + " unit singular values" );

    double  worst = 0;

    for ( std::size_t k = 0; k < cpi.subspace.dim(); ++k )
        worst = std::max( worst, std::abs( norm2( ( a * ComplexMatrix::column( cpi.subspace.vector( k ) ) ).entries() ) - 1.0 ) );
    t.check( "norm preserved on S", worst <= std::sqrt( t.tol.eig1 ), worst, inputs );

    if ( ! cpi.subspace.is_zero() )
    {
        const auto  q   = random::subprojection( t.rng, cpi.subspace.basis(), random::uniform_index( t.rng, 1, cpi.subspace.dim() ) );
        const auto  cq  = a * q;
        const auto  rq  = frobenius_distance( adjoint( cq ) * cq, q );

        t.check( "subprojection of p stays isometric", rq <= 1e-8 && psd_order_leq( q, cpi.p_c, t.tol ), rq, inputs );
    }

    const auto  outside = orthogonal_complement( cpi.subspace );

    if ( ! outside.is_zero() )
    {
        const double  beta = random::uniform_real( t.rng, 0.1, 1.0 );
        auto          d    = beta * random_unit( t.rng, outside.basis() );

        if ( ! cpi.subspace.is_zero() )
            d += std::sqrt( 1 - beta * beta ) * random_unit( t.rng, cpi.subspace.basis() );

        const auto  q  = d * adjoint( d );
        const auto  cq = a * q;
        const auto  rq = frobenius_distance( adjoint( cq ) * cq, q );

        t.check( "projection leaving S is not isometric", rq > 1e-8, 0, inputs, "residual " + sci( rq ) );
    }

    const auto  v   = random::partial_isometry( t.rng, r, c );
    const auto  cv  = contained_partial_isometry( v, t.tol );
    const auto  rv  = std::max( frobenius_distance( cv.p_c, adjoint( v ) * v ), frobenius_distance( cv.v, v ) );

    t.check( "partial isometry contains itself", rv <= 1e-8, rv, [&] { return Json{ { "v", to_json( v ) } }; } );
}

//////////////////////////////////////////////////////////////////////
//
// cthm: the maximal projection p_{v,w}
//

void
suite_cthm ( Trial & t )
{
    const auto  r = t.draw_dim();
    const auto  m = t.draw_dim();
    const auto  c = t.draw_dim();
    const auto  v = random::partial_isometry( t.rng, r, m );
    const auto  w = random::partial_isometry( t.rng, m, c );
    const auto  inputs = [&] { return Json{ { "v", to_json( v ) }, { "w", to_json( w ) } }; };

    const auto [ vw, p ] = dot_compose_with_domain( v, w, t.tol );
    const auto  wp = w * p;

    t.check( "v.w is a partial isometry", classify( vw, t.tol ).is_partial_isometry, partial_isometry_residual( vw ), inputs );
    t.check( "p <= w*w", psd_order_leq( p, adjoint( w ) * w, t.tol ), 0, inputs );
    t.check( "wp is a partial isometry", classify( wp, t.tol ).is_partial_isometry, partial_isometry_residual( wp ), inputs );
    t.check( "(wp)(wp)* <= v*v", psd_order_leq( wp * adjoint( wp ), adjoint( v ) * v, t.tol ), 0, inputs );

    const auto  rid = std::max( frobenius_distance( dot_compose( v, ComplexMatrix::identity( m ), t.tol ), v ),
                                frobenius_distance( dot_compose( ComplexMatrix::identity( r ), v, t.tol ), v ) );

    t.check( "identities are neutral", rid <= 1e-8, rid, inputs );

    const auto  sa = make_labels( "a", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  sb = make_labels( "b", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  sc = make_labels( "c", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  f  = random::partial_function( t.rng, sb, sa );
    const auto  g  = random::partial_function( t.rng, sc, sb );
    const auto  vf = to_partial_isometry( f );
    const auto  vg = to_partial_isometry( g );
    const auto  rf = frobenius_distance( dot_compose( vf, vg, t.tol ), vf * vg );

    t.check( "dot composition of partial functions", rf <= t.tol.eq, rf,
             [&] { return Json{ { "f", to_json( f ) }, { "g", to_json( g ) } }; } );
}

//////////////////////////////////////////////////////////////////////
//
// cathm: associativity of the dot composition
//

void
suite_cathm ( Trial & t )
{
    const auto  d0 = t.draw_dim();
    const auto  d1 = t.draw_dim();
    const auto  d2 = t.draw_dim();
    const auto  d3 = t.draw_dim();
    const auto  u  = random::partial_isometry( t.rng, d0, d1 );
    const auto  v  = random::partial_isometry( t.rng, d1, d2 );
    const auto  w  = random::partial_isometry( t.rng, d2, d3 );

    const auto  lhs = dot_compose( dot_compose( u, v, t.tol ), w, t.tol );
    const auto  rhs = dot_compose( u, dot_compose( v, w, t.tol ), t.tol );
    const auto  res = frobenius_distance( lhs, rhs );

    t.check( "(u.v).w = u.(v.w)", res <= 1e-7, res,
             [&] { return Json{ { "u", to_json( u ) }, { "v", to_json( v ) }, { "w", to_json( w ) } }; } );
}

//////////////////////////////////////////////////////////////////////
//
// functor: partial functions to 0/1 partial isometries
//

void
suite_functor ( Trial & t )
{
    const auto  sa = make_labels( "a", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  sb = make_labels( "b", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  sc = make_labels( "c", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  sd = make_labels( "d", random::uniform_index( t.rng, 0, t.cfg.dim ) );
    const auto  f  = random::partial_function( t.rng, sb, sa );
    const auto  g  = random::partial_function( t.rng, sc, sb );
    const auto  h  = random::partial_function( t.rng, sd, sc );
    const auto  inputs = [&] { return Json{ { "f", to_json( f ) }, { "g", to_json( g ) }, { "h", to_json( h ) } }; };

    const auto  fg  = compose_pdf( f, g );
    const auto  vf  = to_partial_isometry( f );
    const auto  vg  = to_partial_isometry( g );
    const auto  res = frobenius_distance( to_partial_isometry( fg ), vf * vg );

    t.check( "v(f o g) = v(f) v(g)", res == 0.0, res, inputs );

    std::set< std::string >  values;

    for ( const auto & [ c, a ] : fg.mapping() )
        values.insert( a );
    t.check( "composition is injective", values.size() == fg.mapping().size(), 0, inputs );

    t.check( "composition is associative", compose_pdf( fg, h ) == compose_pdf( f, compose_pdf( g, h ) ), 0, inputs );

    const auto  cls = classify_pdf( f );

    t.check( "classification", cls.is_partial_isometry && cls.is_isometry == f.is_total() && cls.is_coisometry == f.is_surjective(),
             0, inputs );
}

//////////////////////////////////////////////////////////////////////
//
// module-tool: the operator picture, P_c, closure laws, scalar specialization
//

void
check_closure_laws ( Trial & t, const CStarAlgebra & alg )
{
    std::vector< std::size_t >  k1, k2, k3;

    for ( std::size_t i = 0; i < alg.num_blocks(); ++i )
    {
        k1.push_back( random::uniform_index( t.rng, 1, 2 ) );
        k2.push_back( k1.back() + random::uniform_index( t.rng, 0, 1 ) );
        k3.push_back( k2.back() + random::uniform_index( t.rng, 0, 1 ) );
    }
    if ( total( k3 ) > t.max_lift() )
        return;

    const auto  e1 = random::module_with_ranges( t.rng, alg, total( k1 ), k1 );
    const auto  e2 = random::module_with_ranges( t.rng, alg, total( k2 ), k2 );
    const auto  e3 = random::module_with_ranges( t.rng, alg, total( k3 ), k3 );

    const auto  i12 = random::module_map( t.rng, e1, e2, random::MapKind::isometry );
    const auto  i23 = random::module_map( t.rng, e2, e3, random::MapKind::isometry );
    const auto  c32 = random::module_map( t.rng, e3, e2, random::MapKind::coisometry );
    const auto  c21 = random::module_map( t.rng, e2, e1, random::MapKind::coisometry );
    const auto  p22 = random::module_map( t.rng, e2, e2, random::MapKind::partial_isometry );

    const auto  inputs = [&] {
        return Json{ { "isometry_12", to_json( i12 ) }, { "isometry_23", to_json( i23 ) }, { "coisometry_32", to_json( c32 ) },
                     { "coisometry_21", to_json( c21 ) }, { "partial_isometry_22", to_json( p22 ) } };
    };

    t.check( "isometry o isometry", is_isometry_mod( compose( i23, i12, t.tol ), t.tol ), 0, inputs );
    t.check( "coisometry o coisometry", is_coisometry_mod( compose( c21, c32, t.tol ), t.tol ), 0, inputs );

    const auto  a = is_partial_isometry_mod( compose( i23, p22, t.tol ), t.tol );
    const auto  b = is_partial_isometry_mod( compose( p22, c32, t.tol ), t.tol );

    t.check( "isometry o partial isometry", a.is_partial_isometry, a.residual, inputs );
    t.check( "partial isometry o coisometry", b.is_partial_isometry, b.residual, inputs );

    const auto  fac = factor_partial_isometry( p22, t.tol );
    const auto  res = frobenius_distance( compose( fac.isometry, fac.coisometry, t.tol ).lift(), p22.lift() );

    t.check( "factorization", is_isometry_mod( fac.isometry, t.tol ) && is_coisometry_mod( fac.coisometry, t.tol ) && res <= 1e-8,
             res, inputs );
}

void
check_specialization ( Trial & t )
{
    const auto  n  = random::uniform_index( t.rng, 1, t.cfg.dim );
    const auto  m  = random::uniform_index( t.rng, 1, t.cfg.dim );
    const auto  k  = random::uniform_index( t.rng, 1, t.cfg.dim );
    const auto  hn = HilbertModule::hilbert_space( n );
    const auto  hm = HilbertModule::hilbert_space( m );
    const auto  hk = HilbertModule::hilbert_space( k );
    const auto  a  = random::contraction( t.rng, m, n, random::uniform_index( t.rng, 0, std::min( m, n ) ) );
    const auto  v  = random::partial_isometry( t.rng, k, m );
    const auto  w  = random::partial_isometry( t.rng, m, n );

    const auto  inputs = [&] { return Json{ { "c", to_json( a ) }, { "v", to_json( v ) }, { "w", to_json( w ) } }; };

    const auto  c   = ModuleMap::from_lift( hn, hm, a, t.tol );
    const auto  cpi = contained_partial_isometry( a, t.tol );
    const auto  mpi = contained_partial_isometry_mod( c, t.tol );

    double  res = frobenius_distance( c.action(), a );

    res = std::max( res, frobenius_distance( orthogonal_projection( isometric_submodule( c, t.tol ).span() ), cpi.p_c ) );
    res = std::max( res, frobenius_distance( mpi.p_c.lift(), cpi.p_c ) );
    res = std::max( res, frobenius_distance( mpi.v.lift(), cpi.v ) );

    const auto  mv = ModuleMap::from_lift( hm, hk, v, t.tol );
    const auto  mw = ModuleMap::from_lift( hn, hm, w, t.tol );
    const auto  ic = product_invariance_criterion( mv, mw, t.tol );
    const auto  pc = product_criterion( v, w, t.tol );
    const auto  pd = dot_compose_with_domain( v, w, t.tol );
    const auto  cd = contained_pdi( compose( mv, mw, t.tol ), t.tol );

    res = std::max( res, frobenius_distance( orthogonal_projection( cd.domain.span() ), pd.second ) );

    const bool  agree = is_partial_isometry_mod( c, t.tol ).is_partial_isometry == classify( a, t.tol ).is_partial_isometry
                        && ic.product_is_pi == pc.product_is_pi;

    t.check( "scalar algebra matches matrices", agree && res <= 1e-8, res, inputs );
}

void
suite_module_tool ( Trial & t )
{
    const auto  alg = random::algebra( t.rng, 3, t.max_block() );
    const auto  e   = random::module( t.rng, alg, t.max_lift() );
    const auto  f   = random::module( t.rng, alg, t.max_lift() );
    const auto  n   = alg.dim();

    const auto  inputs_e = [&] { return Json{ { "module", to_json( e ) } }; };

    double  fid = 0;
    double  off = 0;

    for ( const auto & x : e.generators() )
        for ( const auto & y : e.generators() )
        {
            const auto  g  = random::gaussian( t.rng, n, 1 );
            const auto  g2 = random::gaussian( t.rng, n, 1 );
            const auto  xy = adjoint( x ) * y;
            const auto  sc = std::max( 1.0, frobenius_norm( x ) * frobenius_norm( y ) * frobenius_norm( g ) * frobenius_norm( g2 ) );

            fid = std::max( fid, std::abs( inner( ( x * g ).entries(), ( y * g2 ).entries() ) - inner( g.entries(), ( xy * g2 ).entries() ) ) / sc );
            off = std::max( off, alg.off_block_norm( xy ) );
        }
    t.check( "tool fidelity", fid <= t.tol.eq, fid, inputs_e );
    t.check( "inner products lie in B", off <= t.tol.rank_cutoff(), off, inputs_e );

    const auto  c      = random::module_map( t.rng, e, f, random::MapKind::contraction );
    const auto  inputs = [&] { return Json{ { "c", to_json( c ) } }; };

    double  lres = 0;

    for ( std::size_t j = 0; j < e.dim(); ++j )
        lres = std::max( lres, frobenius_distance( c.lift() * e.generator( j ), f.element( c.action().col( j ) ) ) );
    t.check( "C L_x = L_cx", lres <= 10 * t.tol.eq, lres, inputs );

    const auto  pc = isometric_submodule( c, t.tol );

    t.check( "P_c closed under right multiplication", pc.closure_residual() <= 1e-8, pc.closure_residual(), inputs );

    double  iso = 0;

    for ( const auto & x : pc.elements() )
        iso = std::max( iso, inner_gap( c.apply( x ), x ) );
    t.check( "c isometric on P_c", iso <= 10 * t.tol.eq, iso, inputs );

    for ( const auto & g : e.generators() )
    {
        if ( pc.distance( g ) < 1e-2 )
            continue;

        auto  y = g;

        for ( const auto & b : pc.elements() )
            y -= inner( vec( b ), vec( g ) ) * b;

        const auto  gap = inner_gap( c.apply( y ), y );

        t.check( "P_c is maximal", gap > 10 * t.tol.eq, 0, inputs, "gap " + sci( gap ) );
    }

    check_closure_laws( t, alg );
    check_specialization( t );
}

//////////////////////////////////////////////////////////////////////
//
// invariance: vw partial isometry ⇔ π_v leaves wD invariant
//

void
suite_invariance ( Trial & t )
{
    const auto  alg  = random::algebra( t.rng, 3, t.max_block() );
    const auto  d    = random::module( t.rng, alg, t.max_lift() );
    const auto  e    = random::module( t.rng, alg, t.max_lift() );
    const auto  f    = random::module( t.rng, alg, t.max_lift() );
    const bool  comm = random::coin( t.rng, 0.3 );

    const auto [ v, w ] = comm ? random::commuting_module_pair( t.rng, d, e, f )
                               : std::pair{ random::module_map( t.rng, e, f, random::MapKind::partial_isometry ),
                                            random::module_map( t.rng, d, e, random::MapKind::partial_isometry ) };
    const auto  inputs = [&] { return Json{ { "v", to_json( v ) }, { "w", to_json( w ) }, { "commuting", comm } }; };

    const auto  ic  = product_invariance_criterion( v, w, t.tol );
    double      res = 0;

    if ( ic.product_is_pi )   res = std::max( res, ic.product_residual );
    if ( ic.range_invariant ) res = std::max( res, ic.invariance_residual );

    t.check( "vw partial isometry iff wD invariant", ic.consistent(), res, inputs,
             "product residual " + sci( ic.product_residual ) + ", invariance residual " + sci( ic.invariance_residual ) );

    // an isometry on the left always gives a partial isometry
    auto  kf = block_ranks( e );

    for ( auto & k : kf )
        k += random::uniform_index( t.rng, 0, 1 );
    if ( total( kf ) == 0 || total( kf ) > t.max_lift() )
        return;

    const auto  f2 = random::module_with_ranges( t.rng, alg, total( kf ), kf );
    const auto  u  = random::module_map( t.rng, e, f2, random::MapKind::isometry );
    const auto  iu = product_invariance_criterion( u, w, t.tol );

    t.check( "isometry on the left", iu.product_is_pi && iu.range_invariant, iu.product_residual,
             [&] { return Json{ { "v", to_json( u ) }, { "w", to_json( w ) } }; } );
}

//////////////////////////////////////////////////////////////////////
//
// univthm: the contained partial isometry of a module contraction
//

void
suite_univthm ( Trial & t )
{
    const auto  alg    = random::algebra( t.rng, 3, t.max_block() );
    const auto  e      = random::module( t.rng, alg, t.max_lift() );
    const auto  f      = random::module( t.rng, alg, t.max_lift() );
    const auto  c      = random::module_map( t.rng, e, f, random::MapKind::contraction );
    const auto  inputs = [&] { return Json{ { "c", to_json( c ) } }; };

    const auto  r = contained_partial_isometry_mod( c, t.tol );

    t.check( "P_c closed under right multiplication", r.isometric.closure_residual() <= 1e-8, r.isometric.closure_residual(), inputs );

    const auto &  q = r.isometric.span().basis();

    if ( q.cols() > 0 )
    {
        const auto  m = e.lift_dim();
        const auto  x = unvec( vec( q * random::gaussian( t.rng, q.cols(), 1 ) ), m, alg.dim() );
        const auto  y = unvec( vec( q * random::gaussian( t.rng, q.cols(), 1 ) ), m, alg.dim() );
        const auto  s = x + y;
        const auto  g = inner_gap( c.apply( s ), s ) / std::max( 1.0, frobenius_norm( s ) * frobenius_norm( s ) );

        t.check( "P_c closed under addition", g <= 10 * t.tol.eq && r.isometric.distance( s ) <= 1e-8, g, inputs );
    }

    t.check( "P_c complemented", complement( r.isometric, t.tol ).complemented, 0, inputs );

    const auto  pv = is_partial_isometry_mod( r.v, t.tol );

    t.check( "c o p_c is a partial isometry", pv.is_partial_isometry, pv.residual, inputs );
    if ( ! pv.is_partial_isometry )
        return;

    const auto  rp = frobenius_distance( pv.initial_projection->lift(), r.p_c.lift() );

    t.check( "initial projection is p_c", rp <= 1e-8, rp, inputs );

    double  worst = 0;

    for ( int k = 0; k < 20; ++k )
    {
        const auto  x = random::element( t.rng, e );

        worst = std::max( worst, -domination_margin( c, *pv.initial_projection, x ) / std::max( 1.0, frobenius_norm( x ) * frobenius_norm( x ) ) );
    }
    t.check( "<x, pi x> <= <cx, cx>", worst <= 10 * t.tol.eq, std::max( 0.0, worst ), inputs );

    const auto  cross = cross_term_residual( c, r.p_c );

    t.check( "cross terms vanish", cross <= 1e-8, cross, inputs );
}

//////////////////////////////////////////////////////////////////////
//
// proposition: (vw, P_vw) = (v, π_v E) ∘ (w, π_w D), and the PDI category
//

PDI
random_pdi ( Trial & t, const HilbertModule & src, const HilbertModule & tgt )
{
    const auto  v  = random::module_map( t.rng, src, tgt, random::MapKind::partial_isometry );
    const auto  pv = is_partial_isometry_mod( v, t.tol );
    auto        r  = range( *pv.initial_projection, t.tol );

    if ( r.is_zero() || random::coin( t.rng, 0.5 ) )
        return { v, std::move( r ) };

    const auto  xs = std::vector{ pv.initial_projection->apply( random::element( t.rng, src ) ) };

    return { v, Submodule::generated_by( src, xs, t.tol ) };
}

void
suite_proposition ( Trial & t )
{
    const auto  alg = random::algebra( t.rng, 3, t.max_block() );
    const auto  d   = random::module( t.rng, alg, t.max_lift() );
    const auto  e   = random::module( t.rng, alg, t.max_lift() );
    const auto  f   = random::module( t.rng, alg, t.max_lift() );
    const auto  v   = random::module_map( t.rng, e, f, random::MapKind::partial_isometry );
    const auto  w   = random::module_map( t.rng, d, e, random::MapKind::partial_isometry );
    const auto  inputs = [&] { return Json{ { "v", to_json( v ) }, { "w", to_json( w ) } }; };

    const auto  pc = final_proposition_check( v, w, t.tol );

    t.check( "contained pdi of vw equals the composition", pc.holds,
             std::max( pc.comparison.domain_residual, pc.comparison.map_residual ), inputs,
             "domains " + std::to_string( pc.contained.domain.dim() ) + " vs " + std::to_string( pc.composed.domain.dim() ) );
    t.check( "domains mutually included", pc.comparison.domain_residual <= 1e-8, pc.comparison.domain_residual, inputs );

    // category laws on random partially defined isometries
    const auto  a = random::module( t.rng, alg, t.max_lift() );
    const auto  h = random_pdi( t, a, d );
    const auto  g = random_pdi( t, d, e );
    const auto  k = random_pdi( t, e, f );
    const auto  pdi_inputs = [&] { return Json{ { "h", to_json( h ) }, { "g", to_json( g ) }, { "f", to_json( k ) } }; };

    const auto  assoc = compare_pdi( compose_pdi( compose_pdi( k, g, t.tol ), h, t.tol ),
                                     compose_pdi( k, compose_pdi( g, h, t.tol ), t.tol ), 1e-8 );

    t.check( "pdi composition is associative", assoc.equal, std::max( assoc.domain_residual, assoc.map_residual ), pdi_inputs );

    const auto  left  = compare_pdi( compose_pdi( identity_pdi( e ), g, t.tol ), g, 1e-8 );
    const auto  right = compose_pdi( g, identity_pdi( d ), t.tol );
    const auto  rcmp  = compare_pdi( right, g, 1e-8 );

    t.check( "identity pdis are neutral", left.equal && rcmp.equal,
             std::max( { left.domain_residual, left.map_residual, rcmp.domain_residual, rcmp.map_residual } ), pdi_inputs );

    // partial functions: the composed domain is spanned by e_c, c ∈ D(f∘g)
    const auto  lim = std::min< std::size_t >( 4, t.cfg.dim );
    const auto  sa  = make_labels( "a", random::uniform_index( t.rng, 1, lim ) );
    const auto  sb  = make_labels( "b", random::uniform_index( t.rng, 1, lim ) );
    const auto  sc  = make_labels( "c", random::uniform_index( t.rng, 1, lim ) );
    const auto  pf  = random::partial_function( t.rng, sb, sa );
    const auto  pg  = random::partial_function( t.rng, sc, sb );
    const auto  ha  = HilbertModule::hilbert_space( sa.size() );
    const auto  hb  = HilbertModule::hilbert_space( sb.size() );
    const auto  hc  = HilbertModule::hilbert_space( sc.size() );
    const auto  vf  = ModuleMap::from_lift( hb, ha, to_partial_isometry( pf ), t.tol );
    const auto  vg  = ModuleMap::from_lift( hc, hb, to_partial_isometry( pg ), t.tol );

    const PDI   df{ vf, range( *is_partial_isometry_mod( vf, t.tol ).initial_projection, t.tol ) };
    const PDI   dg{ vg, range( *is_partial_isometry_mod( vg, t.tol ).initial_projection, t.tol ) };

    const auto                    pfg = compose_pdf( pf, pg );
    std::vector< ComplexMatrix >  expect;

    for ( const auto & [ c, a2 ] : pfg.mapping() )
    {
        ComplexMatrix  x( sc.size(), 1 );

        x( *sc.index_of( c ), 0 ) = 1;
        expect.push_back( std::move( x ) );
    }

    const auto  dom = compose_pdi( df, dg, t.tol ).domain;
    const auto  ref = Submodule::generated_by( hc, expect, t.tol );

    t.check( "pdi domain of partial functions", same_submodule( dom, ref, 1e-12 ),
             std::max( inclusion_residual( dom, ref ), inclusion_residual( ref, dom ) ),
             [&] { return Json{ { "f", to_json( pf ) }, { "g", to_json( pg ) } }; } );
}

//////////////////////////////////////////////////////////////////////

using SuiteFn = void ( * ) ( Trial & );

struct SuiteEntry
{
    const char *  name;
    SuiteFn       fn;
};

const SuiteEntry  registry[] = {
    { "pilem", suite_pilem },           { "clem", suite_clem },
    { "cthm", suite_cthm },             { "cathm", suite_cathm },
    { "functor", suite_functor },       { "module-tool", suite_module_tool },
    { "invariance", suite_invariance }, { "univthm", suite_univthm },
    { "proposition", suite_proposition },
};

std::vector< Outcome >
run_trial ( SuiteFn fn, const SuiteConfig & cfg, std::uint64_t seed )
{
    Trial  t( cfg, seed );

    try
    {
        fn( t );
        t.check( "no exceptions", true, 0, [] { return Json(); } );
    }
    catch ( const std::exception & e )
    {
        t.check( "no exceptions", false, 0, [] { return Json::object(); }, e.what() );
    }
    return std::move( t.out );
}

SuiteReport
run_suite ( std::size_t index, const SuiteConfig & cfg )
{
    const auto  start = std::chrono::steady_clock::now();
    const auto  entry = registry[index];
    const auto  n     = cfg.trial_seed ? std::size_t( 1 ) : cfg.trials;
    const auto  base  = random::derive_seed( cfg.seed, index );

    std::vector< std::uint64_t >           seeds( n );
    std::vector< std::vector< Outcome > >  results( n );

    for ( std::size_t i = 0; i < n; ++i )
        seeds[i] = cfg.trial_seed ? *cfg.trial_seed : random::derive_seed( base, i );

    std::atomic< std::size_t >  next{ 0 };
    auto                        worker = [&] {
        for ( std::size_t i; ( i = next.fetch_add( 1 ) ) < n; )
            results[i] = run_trial( entry.fn, cfg, seeds[i] );
    };

    const auto  jobs = std::min< std::size_t >( std::max( 1u, cfg.jobs ), n );

    if ( jobs <= 1 )
        worker();
    else
    {
        std::vector< std::jthread >  pool;

        for ( std::size_t j = 0; j < jobs; ++j )
            pool.emplace_back( worker );
    }

    // aggregate in trial order so the report does not depend on scheduling
    SuiteReport  rep{ entry.name, {}, 0 };

    for ( std::size_t i = 0; i < n; ++i )
        for ( auto & o : results[i] )
        {
            auto  it = std::find_if( rep.checks.begin(), rep.checks.end(), [&] ( const Check & c ) { return c.name == o.check; } );

            if ( it == rep.checks.end() )
            {
                rep.checks.push_back( Check{ o.check, 0, 0, 0, {} } );
                it = rep.checks.end() - 1;
            }

            ++it->evaluated;
            if ( std::isfinite( o.residual ) )
                it->max_residual = std::max( it->max_residual, o.residual );

            if ( ! o.ok )
            {
                ++it->failures;
                if ( it->counterexamples.size() < max_counterexamples )
                    it->counterexamples.push_back( { cfg.trial_seed ? 0 : i, seeds[i], o.message, std::move( o.inputs ) } );
            }
        }

    rep.seconds = std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
    return rep;
}

}// namespace anonymous

const std::vector< std::string > &
suite_names ()
{
    static const std::vector< std::string >  names = [] {
        std::vector< std::string >  r;

        for ( const auto & e : registry )
            r.push_back( e.name );
        return r;
    }();

    return names;
}

void
SuiteConfig::validate () const
{
    const auto &  names = suite_names();

    if ( suite != "all" && std::find( names.begin(), names.end(), suite ) == names.end() )
        throw InvalidValue( "unknown suite '" + suite + "'" );
    if ( trials < 1 )
        throw InvalidValue( "trials must be at least 1" );
    if ( dim < 1 || dim > 16 )
        throw InvalidValue( "dim must lie in [1, 16]" );
    if ( jobs < 1 )
        throw InvalidValue( "jobs must be at least 1" );
    tol.validate();
}

bool
SuiteReport::passed () const
{
    return std::all_of( checks.begin(), checks.end(), [] ( const Check & c ) { return c.passed(); } );
}

const Check *
SuiteReport::find ( const std::string & check ) const
{
    for ( const auto & c : checks )
        if ( c.name == check )
            return &c;
    return nullptr;
}

bool
Report::passed () const
{
    return std::all_of( suites.begin(), suites.end(), [] ( const SuiteReport & s ) { return s.passed(); } );
}

const SuiteReport *
Report::find ( const std::string & suite ) const
{
    for ( const auto & s : suites )
        if ( s.name == suite )
            return &s;
    return nullptr;
}

io::Json
Report::to_json ( bool timing ) const
{
    Json  cfg{ { "suite", config.suite },
               { "trials", config.trials },
               { "dim", config.dim },
               { "seed", config.seed },
               { "tol", { { "eq", config.tol.eq }, { "eig1", config.tol.eig1 }, { "ortho", config.tol.ortho } } } };

    if ( config.trial_seed )
        cfg["trial_seed"] = *config.trial_seed;

    Json  suites_json = Json::array();

    for ( const auto & s : suites )
    {
        Json  checks = Json::array();

        for ( const auto & c : s.checks )
        {
            Json  ces = Json::array();

            for ( const auto & ce : c.counterexamples )
                ces.push_back( { { "trial", ce.trial }, { "seed", ce.seed }, { "message", ce.message }, { "inputs", ce.inputs } } );

            checks.push_back( { { "name", c.name },
                                { "passed", c.passed() },
                                { "evaluated", c.evaluated },
                                { "failures", c.failures },
                                { "max_residual", c.max_residual },
                                { "counterexamples", std::move( ces ) } } );
        }

        Json  sj{ { "name", s.name }, { "passed", s.passed() }, { "checks", std::move( checks ) } };

        if ( timing )
            sj["seconds"] = s.seconds;
        suites_json.push_back( std::move( sj ) );
    }

    return { { "config", std::move( cfg ) }, { "passed", passed() }, { "suites", std::move( suites_json ) } };
}

std::string
Report::table () const
{
    std::ostringstream  os;
    char                line[256];

    std::snprintf( line, sizeof( line ), "%-12s %-44s %8s %8s %12s  %s\n", "suite", "check", "runs", "fails", "max resid", "" );
    os << line;

    for ( const auto & s : suites )
    {
        for ( const auto & c : s.checks )
        {
            std::snprintf( line, sizeof( line ), "%-12s %-44s %8zu %8zu %12.3e  %s\n", s.name.c_str(), c.name.c_str(),
                           c.evaluated, c.failures, c.max_residual, c.passed() ? "ok" : "FAIL" );
            os << line;
        }
        std::snprintf( line, sizeof( line ), "%-12s %-44s %.2fs\n", s.name.c_str(), s.passed() ? "pass" : "FAIL", s.seconds );
        os << line;
    }
    return os.str();
}

Report
run ( const SuiteConfig & config )
{
    config.validate();

    Report        rep{ config, {} };
    const auto &  names = suite_names();

    for ( std::size_t i = 0; i < names.size(); ++i )
        if ( config.suite == "all" || config.suite == names[i] )
            rep.suites.push_back( run_suite( i, config ) );
    return rep;
}

}// namespace piso::suites
