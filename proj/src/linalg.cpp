#include "piso/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace piso {

namespace {

constexpr int     max_sweeps = 64;
constexpr double  jacobi_eps = 1e-15;

double
off_diagonal_norm ( const ComplexMatrix & a )
{
    double  s = 0;

    for ( std::size_t i = 0; i < a.rows(); ++i )
        for ( std::size_t j = 0; j < a.cols(); ++j )
            if ( i != j )
                s += std::norm( a( i, j ) );
    return std::sqrt( s );
}

//
// zero a(p,q) by the unitary Q = diag(1, e^{-iφ})·[[c, s], [-s, c]] acting on
// coordinates p, q; a ← Q* a Q, v ← v Q
//
void
rotate ( ComplexMatrix & a, ComplexMatrix & v, std::size_t p, std::size_t q )
{
    const Complex  apq = a( p, q );
    const double   r   = std::abs( apq );

    if ( r == 0.0 )
        return;

    const Complex  phase = apq / r;
    const double   alpha = a( p, p ).real();
    const double   beta  = a( q, q ).real();
    const double   tau   = ( beta - alpha ) / ( 2.0 * r );
    const double   t     = ( tau >= 0 ? 1.0 : -1.0 ) / ( std::abs( tau ) + std::sqrt( 1.0 + tau * tau ) );
    const double   c     = 1.0 / std::sqrt( 1.0 + t * t );
    const double   s     = t * c;

    const Complex  q00 = c;
    const Complex  q01 = s;
    const Complex  q10 = -s * std::conj( phase );
    const Complex  q11 = c * std::conj( phase );
    const auto     n   = a.rows();

    for ( std::size_t k = 0; k < n; ++k )
    {
        const auto  akp = a( k, p );
        const auto  akq = a( k, q );

        a( k, p ) = akp * q00 + akq * q10;
        a( k, q ) = akp * q01 + akq * q11;
    }

    for ( std::size_t k = 0; k < n; ++k )
    {
        const auto  apk = a( p, k );
        const auto  aqk = a( q, k );

        a( p, k ) = std::conj( q00 ) * apk + std::conj( q10 ) * aqk;
        a( q, k ) = std::conj( q01 ) * apk + std::conj( q11 ) * aqk;
    }

    a( p, q ) = 0.0;
    a( q, p ) = 0.0;
    a( p, p ) = a( p, p ).real();
    a( q, q ) = a( q, q ).real();

    for ( std::size_t k = 0; k < v.rows(); ++k )
    {
        const auto  vkp = v( k, p );
        const auto  vkq = v( k, q );

        v( k, p ) = vkp * q00 + vkq * q10;
        v( k, q ) = vkp * q01 + vkq * q11;
    }
}

double
largest_singular_value ( const std::vector< double > & gram_eigenvalues )
{
    return gram_eigenvalues.empty() ? 0.0 : std::sqrt( std::max( 0.0, gram_eigenvalues.front() ) );
}

ComplexMatrix
select_columns ( const ComplexMatrix & m, const std::vector< std::size_t > & idx )
{
    ComplexMatrix  s( m.rows(), idx.size() );

    for ( std::size_t k = 0; k < idx.size(); ++k )
        for ( std::size_t i = 0; i < m.rows(); ++i )
            s( i, k ) = m( i, idx[k] );
    return s;
}

// x ← x − Q Q* x over the first `cols` columns of q
void
project_out ( ComplexMatrix & x, const ComplexMatrix & q, std::size_t cols )
{
    for ( std::size_t k = 0; k < cols; ++k )
    {
        Complex  d = 0;

        for ( std::size_t i = 0; i < q.rows(); ++i )
            d += std::conj( q( i, k ) ) * x( i, 0 );
        for ( std::size_t i = 0; i < q.rows(); ++i )
            x( i, 0 ) -= d * q( i, k );
    }
}

// modified Gram-Schmidt, applied twice, on nearly orthonormal columns
ComplexMatrix
reorthonormalize ( ComplexMatrix u )
{
    for ( std::size_t k = 0; k < u.cols(); ++k )
    {
        ComplexMatrix  x( u.rows(), 1 );

        for ( std::size_t i = 0; i < u.rows(); ++i )
            x( i, 0 ) = u( i, k );
        for ( int pass = 0; pass < 2; ++pass )
            project_out( x, u, k );

        const double  nx = frobenius_norm( x );

        for ( std::size_t i = 0; i < u.rows(); ++i )
            u( i, k ) = x( i, 0 ) / nx;
    }
    return u;
}

}// namespace anonymous


Subspace
Subspace::from_orthonormal ( ComplexMatrix basis, const Tolerance & tol )
{
    const auto  gram = adjoint( basis ) * basis;

    if ( frobenius_distance( gram, ComplexMatrix::identity( basis.cols() ) ) > tol.ortho )
        throw InvalidValue( "subspace: basis not orthonormal" );

    Subspace  s;

    s.basis_ = std::move( basis );
    return s;
}

Subspace
Subspace::full ( std::size_t ambient_dim )
{
    Subspace  s;

    s.basis_ = ComplexMatrix::identity( ambient_dim );
    return s;
}

bool
is_hermitian ( const ComplexMatrix & a, const Tolerance & tol )
{
    return a.is_square() && frobenius_distance( a, adjoint( a ) ) <= tol.eq;
}

Eigensystem
hermitian_eigensystem ( const ComplexMatrix & a, const Tolerance & tol )
{
    if ( ! a.is_square() )
        throw NotHermitian( "eigensystem: non-square " + shape_string( a ) );
    if ( ! is_hermitian( a, tol ) )
        throw NotHermitian( "eigensystem: ‖a − a*‖ = " + sci( frobenius_distance( a, adjoint( a ) ) ) );

    const auto     n    = a.rows();
    ComplexMatrix  work = 0.5 * ( a + adjoint( a ) );
    ComplexMatrix  v    = ComplexMatrix::identity( n );
    const double   scale = frobenius_norm( work );

    for ( int sweep = 0; sweep < max_sweeps; ++sweep )
    {
        if ( off_diagonal_norm( work ) <= jacobi_eps * scale )
            break;

        for ( std::size_t p = 0; p + 1 < n; ++p )
            for ( std::size_t q = p + 1; q < n; ++q )
                rotate( work, v, p, q );
    }

    std::vector< std::size_t >  order( n );

    std::iota( order.begin(), order.end(), 0 );
    std::stable_sort( order.begin(), order.end(),
                      [&] ( auto i, auto j ) { return work( i, i ).real() > work( j, j ).real(); } );

    Eigensystem  es;

    es.values.reserve( n );
    for ( auto i : order )
        es.values.push_back( work( i, i ).real() );
    es.vectors = select_columns( v, order );
    return es;
}

double
operator_norm ( const ComplexMatrix & a )
{
    if ( a.empty() )
        return 0.0;

    const auto  gram = a.rows() < a.cols() ? a * adjoint( a ) : adjoint( a ) * a;

    return largest_singular_value( hermitian_eigensystem( gram, { .eq = 1e-3 } ).values );
}

Subspace
eigenspace_at_one ( const ComplexMatrix & a, const Tolerance & tol )
{
    const auto  es = hermitian_eigensystem( a, tol );

    if ( ! es.values.empty() )
    {
        if ( es.values.back() < -tol.eq )
            throw NotContractivePositive( "eigenspace_at_one: negative eigenvalue " + sci( es.values.back() ) );
        if ( es.values.front() > 1.0 + tol.eq )
            throw NotContractivePositive( "eigenspace_at_one: largest eigenvalue exceeds 1 by " + sci( es.values.front() - 1.0 ) );
    }

    std::vector< std::size_t >  idx;

    for ( std::size_t k = 0; k < es.values.size(); ++k )
        if ( es.values[k] >= 1.0 - tol.eig1 )
            idx.push_back( k );

    return Subspace::from_orthonormal( select_columns( es.vectors, idx ), { .ortho = 1e-8 } );
}

ComplexMatrix
orthogonal_projection ( const Subspace & s )
{
    return s.basis() * adjoint( s.basis() );
}

bool
is_psd ( const ComplexMatrix & a, const Tolerance & tol )
{
    const auto  es = hermitian_eigensystem( a, tol );

    return es.values.empty() || es.values.back() >= -tol.eq;
}

bool
psd_order_leq ( const ComplexMatrix & a, const ComplexMatrix & b, const Tolerance & tol )
{
    if ( a.rows() != b.rows() || a.cols() != b.cols() )
        throw ShapeMismatch( "psd_order_leq: " + shape_string( a ) + " vs " + shape_string( b ) );
    if ( ! is_hermitian( a, tol ) || ! is_hermitian( b, tol ) )
        throw NotHermitian( "psd_order_leq: arguments must be Hermitian" );

    return is_psd( b - a, { .eq = tol.eq, .eig1 = tol.eig1, .ortho = tol.ortho } );
}

Subspace
column_span ( const ComplexMatrix & m, const Tolerance & tol )
{
    // tall matrices diagonalize the smaller m* m and map its eigenvectors through m
    const bool  tall = m.cols() < m.rows();
    const auto  es   = hermitian_eigensystem( tall ? adjoint( m ) * m : m * adjoint( m ), { .eq = 1e-3 } );
    const auto  smax = largest_singular_value( es.values );
    const auto  cut  = tol.rank_cutoff() * std::max( 1.0, smax );

    std::vector< std::size_t >  idx;

    for ( std::size_t k = 0; k < es.values.size(); ++k )
        if ( es.values[k] > cut * cut )
            idx.push_back( k );

    if ( ! tall )
        return Subspace::from_orthonormal( select_columns( es.vectors, idx ), { .ortho = 1e-8 } );

    auto  u = m * select_columns( es.vectors, idx );

    for ( std::size_t k = 0; k < idx.size(); ++k )
    {
        const double  inv = 1.0 / std::sqrt( es.values[idx[k]] );

        for ( std::size_t i = 0; i < u.rows(); ++i )
            u( i, k ) *= inv;
    }
    return Subspace::from_orthonormal( reorthonormalize( std::move( u ) ), { .ortho = 1e-8 } );
}

Subspace
null_space ( const ComplexMatrix & m, const Tolerance & tol )
{
    if ( m.rows() < m.cols() )
        return orthogonal_complement( column_span( adjoint( m ), tol ), tol );

    const auto  es   = hermitian_eigensystem( adjoint( m ) * m, { .eq = 1e-3 } );
    const auto  smax = largest_singular_value( es.values );
    const auto  cut  = tol.rank_cutoff() * std::max( 1.0, smax );

    std::vector< std::size_t >  idx;

    for ( std::size_t k = 0; k < es.values.size(); ++k )
        if ( es.values[k] <= cut * cut )
            idx.push_back( k );

    return Subspace::from_orthonormal( select_columns( es.vectors, idx ), { .ortho = 1e-8 } );
}

// completes the basis of s by pivoted Gram-Schmidt over the unit vectors
Subspace
orthogonal_complement ( const Subspace & s, const Tolerance & )
{
    const auto  n    = s.ambient_dim();
    const auto  need = n - s.dim();

    ComplexMatrix  q( n, n );

    for ( std::size_t k = 0; k < s.dim(); ++k )
        for ( std::size_t i = 0; i < n; ++i )
            q( i, k ) = s.basis()( i, k );

    std::vector< ComplexMatrix >  cand;

    for ( std::size_t j = 0; j < n; ++j )
    {
        ComplexMatrix  e( n, 1 );

        e( j, 0 ) = 1;
        cand.push_back( std::move( e ) );
    }

    ComplexMatrix  out( n, need );

    for ( std::size_t filled = 0; filled < need; ++filled )
    {
        const auto  cols  = s.dim() + filled;
        std::size_t best  = 0;
        double      bestn = -1;

        for ( std::size_t j = 0; j < cand.size(); ++j )
        {
            for ( int pass = 0; pass < 2; ++pass )
                project_out( cand[j], q, cols );

            const double  nj = frobenius_norm( cand[j] );

            if ( nj > bestn )
            {
                bestn = nj;
                best  = j;
            }
        }

        auto  x = cand[best];

        project_out( x, q, cols );
        x = ( 1.0 / frobenius_norm( x ) ) * x;
        cand.erase( cand.begin() + static_cast< std::ptrdiff_t >( best ) );

        for ( std::size_t i = 0; i < n; ++i )
        {
            q( i, cols )     = x( i, 0 );
            out( i, filled ) = x( i, 0 );
        }
    }
    return Subspace::from_orthonormal( std::move( out ), { .ortho = 1e-8 } );
}

Subspace
subspace_sum ( const Subspace & a, const Subspace & b, const Tolerance & tol )
{
    if ( a.ambient_dim() != b.ambient_dim() )
        throw ShapeMismatch( "subspace_sum: ambient dimension mismatch" );

    const ComplexMatrix  parts[] = { a.basis(), b.basis() };

    return column_span( hstack( parts, a.ambient_dim() ), tol );
}

double
distance_to ( const Subspace & s, std::span< const Complex > x )
{
    if ( x.size() != s.ambient_dim() )
        throw ShapeMismatch( "distance_to: ambient dimension mismatch" );

    const auto  xc   = ComplexMatrix::column( x );
    const auto  proj = s.basis() * ( adjoint( s.basis() ) * xc );

    return frobenius_distance( xc, proj );
}

double
inclusion_residual ( const Subspace & inner, const Subspace & outer )
{
    if ( inner.ambient_dim() != outer.ambient_dim() )
        throw ShapeMismatch( "inclusion: ambient dimension mismatch" );

    double  worst = 0;

    for ( std::size_t k = 0; k < inner.dim(); ++k )
        worst = std::max( worst, distance_to( outer, inner.vector( k ) ) );
    return worst;
}

bool
includes ( const Subspace & outer, const Subspace & inner, double slack )
{
    return inner.dim() <= outer.dim() && inclusion_residual( inner, outer ) <= slack;
}

bool
same_subspace ( const Subspace & a, const Subspace & b, double slack )
{
    return a.dim() == b.dim() && includes( a, b, slack ) && includes( b, a, slack );
}

ComplexMatrix
pseudo_inverse ( const ComplexMatrix & a, const Tolerance & tol )
{
    // work with the smaller Gram matrix: a⁺ = (a*a)⁺ a* = a* (a a*)⁺
    const bool  wide = a.rows() < a.cols();
    const auto  gram = wide ? a * adjoint( a ) : adjoint( a ) * a;
    const auto  es   = hermitian_eigensystem( gram, { .eq = 1e-3 } );
    const auto  smax = largest_singular_value( es.values );
    const auto  cut  = tol.rank_cutoff() * std::max( 1.0, smax );

    ComplexMatrix  inv_gram( gram.rows(), gram.cols() );

    for ( std::size_t k = 0; k < es.values.size(); ++k )
    {
        if ( es.values[k] <= cut * cut )
            continue;

        const auto  vk = ComplexMatrix::column( es.vectors.col( k ) );

        inv_gram += ( 1.0 / es.values[k] ) * ( vk * adjoint( vk ) );
    }
    return wide ? adjoint( a ) * inv_gram : inv_gram * adjoint( a );
}

}// namespace piso
