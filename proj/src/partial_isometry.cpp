#include "piso/partial_isometry.hpp"

#include <algorithm>
#include <cmath>

namespace piso {

namespace {

void
require_partial_isometry ( const ComplexMatrix & a, const char * name, const Tolerance & tol )
{
    const auto  r = partial_isometry_residual( a );

    if ( r > tol.eq )
        throw NotPartialIsometry( std::string( name ) + " is not a partial isometry (residual " + sci( r ) + ")" );
}

void
require_composable ( const ComplexMatrix & v, const ComplexMatrix & w )
{
    if ( v.cols() != w.rows() )
        throw ShapeMismatch( "cannot compose " + shape_string( v ) + " with " + shape_string( w ) );
}

void
require_contraction ( const ComplexMatrix & c, const Tolerance & tol )
{
    const auto  n = operator_norm( c );

    if ( n > 1.0 + tol.eq )
        throw NotContraction( "operator norm exceeds 1 by " + sci( n - 1.0 ) );
}

}// namespace anonymous

double
partial_isometry_residual ( const ComplexMatrix & a )
{
    return frobenius_distance( a * adjoint( a ) * a, a );
}

OperatorClass
classify ( const ComplexMatrix & a, const Tolerance & tol )
{
    const auto     as = adjoint( a );
    OperatorClass  c;

    c.is_contraction      = operator_norm( a ) <= 1.0 + tol.eq;
    c.is_projection       = a.is_square() && frobenius_distance( as * a, a ) <= tol.eq;
    c.is_partial_isometry = partial_isometry_residual( a ) <= tol.eq;
    c.is_isometry         = frobenius_distance( as * a, ComplexMatrix::identity( a.cols() ) ) <= tol.eq;
    c.is_coisometry       = frobenius_distance( a * as, ComplexMatrix::identity( a.rows() ) ) <= tol.eq;
    c.is_unitary          = c.is_isometry && c.is_coisometry;
    return c;
}

std::string
describe ( const OperatorClass & c )
{
    if ( c.is_unitary )
        return "unitary";

    std::string  s;
    auto         add = [&] ( const char * w ) { s += s.empty() ? w : std::string( "; " ) + w; };

    if ( c.is_projection )  add( "projection" );
    if ( c.is_isometry )    add( "isometry" );
    if ( c.is_coisometry )  add( "coisometry" );

    if ( c.is_partial_isometry )
    {
        if ( s.empty() )
            add( "partial isometry" );
    }
    else if ( c.is_contraction )
        add( "contraction; not a partial isometry" );
    else
        add( "not a contraction" );
    return s;
}

ProductCriterion
product_criterion ( const ComplexMatrix & v, const ComplexMatrix & w, const Tolerance & tol )
{
    require_composable( v, w );
    require_partial_isometry( v, "v", tol );
    require_partial_isometry( w, "w", tol );

    const auto  vw   = v * w;
    const auto  vsv  = adjoint( v ) * v;
    const auto  wws  = w * adjoint( w );
    const auto  e    = vsv * wws;

    ProductCriterion  pc;

    pc.product_residual     = partial_isometry_residual( vw );
    pc.idempotent_residual  = frobenius_distance( e * e, e );
    pc.selfadjoint_residual = frobenius_distance( e, adjoint( e ) );
    pc.commutator_residual  = frobenius_distance( vsv * wws, wws * vsv );

    pc.product_is_pi       = pc.product_residual <= tol.eq;
    pc.idempotent          = pc.idempotent_residual <= tol.eq;
    pc.projection          = pc.idempotent && pc.selfadjoint_residual <= tol.eq;
    pc.projections_commute = pc.commutator_residual <= tol.eq;
    return pc;
}

ComplexMatrix
nearest_partial_isometry ( const ComplexMatrix & a, const Tolerance & tol )
{
    // a = Σ σ_k u_k v_k*  ↦  Σ u_k v_k*  over the numerically nonzero σ_k
    const auto     es   = hermitian_eigensystem( adjoint( a ) * a, { .eq = 1e-3 } );
    const double   smax = es.values.empty() ? 0.0 : std::sqrt( std::max( 0.0, es.values.front() ) );
    const double   cut  = tol.rank_cutoff() * std::max( 1.0, smax );
    ComplexMatrix  r( a.rows(), a.cols() );

    for ( std::size_t k = 0; k < es.values.size(); ++k )
    {
        const double  sigma = std::sqrt( std::max( 0.0, es.values[k] ) );

        if ( sigma <= cut )
            break;

        const auto  vk = ComplexMatrix::column( es.vectors.col( k ) );
        const auto  uk = ( 1.0 / sigma ) * ( a * vk );

        r += uk * adjoint( vk );
    }
    return r;
}

Subspace
isometric_subspace ( const ComplexMatrix & c, const Tolerance & tol )
{
    require_contraction( c, tol );

    // ‖c*c‖ may reach (1 + eq)²
    auto  t = tol;

    t.eq = std::min( 1e-3, 3.0 * tol.eq + 1e-14 );
    return eigenspace_at_one( adjoint( c ) * c, t );
}

ContainedPI
contained_partial_isometry ( const ComplexMatrix & c, const Tolerance & tol )
{
    auto  s   = isometric_subspace( c, tol );
    auto  p_c = orthogonal_projection( s );
    auto  v   = c * p_c;

    return { std::move( p_c ), std::move( v ), std::move( s ) };
}

std::pair< ComplexMatrix, ComplexMatrix >
dot_compose_with_domain ( const ComplexMatrix & v, const ComplexMatrix & w, const Tolerance & tol )
{
    require_composable( v, w );
    require_partial_isometry( v, "v", tol );
    require_partial_isometry( w, "w", tol );

    auto  cpi = contained_partial_isometry( v * w, tol );

    return { std::move( cpi.v ), std::move( cpi.p_c ) };
}

ComplexMatrix
dot_compose ( const ComplexMatrix & v, const ComplexMatrix & w, const Tolerance & tol )
{
    return dot_compose_with_domain( v, w, tol ).first;
}

}// namespace piso
