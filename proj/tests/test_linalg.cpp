#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "piso/linalg.hpp"
#include "piso/random.hpp"
#include "test_util.hpp"

using namespace piso;

namespace {

const Complex  I( 0, 1 );

Eigen::MatrixXcd
to_eigen ( const ComplexMatrix & a )
{
    Eigen::MatrixXcd  m( a.rows(), a.cols() );

    for ( std::size_t i = 0; i < a.rows(); ++i )
        for ( std::size_t j = 0; j < a.cols(); ++j )
            m( i, j ) = a( i, j );
    return m;
}

ComplexMatrix
from_eigen ( const Eigen::MatrixXcd & m )
{
    ComplexMatrix  a( m.rows(), m.cols() );

    for ( Eigen::Index i = 0; i < m.rows(); ++i )
        for ( Eigen::Index j = 0; j < m.cols(); ++j )
            a( i, j ) = m( i, j );
    return a;
}

ComplexMatrix
random_hermitian ( random::Engine & rng, std::size_t n )
{
    const auto  g = random::gaussian( rng, n, n );

    return 0.5 * ( g + adjoint( g ) );
}

ComplexMatrix
random_psd ( random::Engine & rng, std::size_t n )
{
    const auto  g = random::gaussian( rng, n, n );

    return g * adjoint( g );
}

}// namespace anonymous

TEST( Adjoint, Examples )
{
    EXPECT_EQ( adjoint( ComplexMatrix{ { 0, 1 }, { 0, 0 } } ), ( ComplexMatrix{ { 0, 0 }, { 1, 0 } } ) );
    EXPECT_EQ( adjoint( ComplexMatrix{ { I } } ), ( ComplexMatrix{ { -I } } ) );

    random::Engine  rng( 1 );
    const auto      a = random::gaussian( rng, 3, 2 );

    EXPECT_EQ( adjoint( adjoint( a ) ), a );
    EXPECT_EQ( adjoint( a )( 1, 2 ), std::conj( a( 2, 1 ) ) );
}

TEST( Adjoint, DegenerateShapes )
{
    const ComplexMatrix  a( 0, 3 );

    EXPECT_EQ( adjoint( a ).rows(), 3u );
    EXPECT_EQ( adjoint( a ).cols(), 0u );
    EXPECT_EQ( ( adjoint( a ) * a ), ComplexMatrix( 3, 3 ) );
}

TEST( Matrix, RejectsNonFinite )
{
    EXPECT_THROW( ComplexMatrix( 1, 1, { Complex( NAN, 0 ) } ), InvalidValue );
    EXPECT_THROW( ComplexMatrix( 2, 1, { 1.0 } ), ShapeMismatch );
}

TEST( Tolerance, Validation )
{
    EXPECT_NO_THROW( Tolerance{}.validate() );
    EXPECT_THROW( ( Tolerance{ .eq = -1 } ).validate(), InvalidValue );
    EXPECT_THROW( ( Tolerance{ .eig1 = 1e-2 } ).validate(), InvalidValue );
}

TEST( Eigensystem, Diagonal )
{
    const auto  es = hermitian_eigensystem( ComplexMatrix::diagonal( { 1.0, 0.25 } ) );

    ASSERT_EQ( es.values.size(), 2u );
    EXPECT_DOUBLE_EQ( es.values[0], 1.0 );
    EXPECT_DOUBLE_EQ( es.values[1], 0.25 );
    EXPECT_TRUE( MatrixNear( es.vectors, ComplexMatrix::identity( 2 ), 0.0 ) );
}

TEST( Eigensystem, RankOneTwoByTwo )
{
    // [[½,½],[½,½]] = u u* with u = (1,1)/√2
    const auto  es = hermitian_eigensystem( ComplexMatrix{ { 0.5, 0.5 }, { 0.5, 0.5 } } );

    EXPECT_NEAR( es.values[0], 1.0, 1e-15 );
    EXPECT_NEAR( es.values[1], 0.0, 1e-15 );

    const auto  v = es.vectors.col( 0 );

    // eigenvector fixed up to a phase
    EXPECT_NEAR( std::abs( v[0] ), 1 / std::sqrt( 2.0 ), 1e-15 );
    EXPECT_NEAR( std::abs( v[0] - v[1] ), 0.0, 1e-15 );
}

TEST( Eigensystem, Identity )
{
    const auto  es = hermitian_eigensystem( ComplexMatrix::identity( 4 ) );

    for ( auto l : es.values )
        EXPECT_EQ( l, 1.0 );
}

TEST( Eigensystem, RejectsNonHermitian )
{
    EXPECT_THROW( hermitian_eigensystem( ComplexMatrix{ { 0, 1 }, { 0, 0 } } ), NotHermitian );
    EXPECT_THROW( hermitian_eigensystem( ComplexMatrix( 2, 3 ) ), NotHermitian );
}

TEST( Eigensystem, RandomReconstructionAgainstEigen )
{
    random::Engine  rng( 7 );

    for ( int trial = 0; trial < 200; ++trial )
    {
        const auto  n  = random::uniform_index( rng, 1, 16 );
        const auto  a  = random_hermitian( rng, n );
        const auto  es = hermitian_eigensystem( a );
        const auto  scale = std::max( 1.0, operator_norm( a ) );

        ComplexMatrix  lambda( n, n );

        for ( std::size_t k = 0; k < n; ++k )
            lambda( k, k ) = es.values[k];

        EXPECT_TRUE( MatrixNear( es.vectors * lambda * adjoint( es.vectors ), a, 1e-9 * scale ) );
        EXPECT_TRUE( MatrixNear( adjoint( es.vectors ) * es.vectors, ComplexMatrix::identity( n ), 1e-10 ) );
        EXPECT_TRUE( std::is_sorted( es.values.rbegin(), es.values.rend() ) );

        // independent oracle: Eigen's self-adjoint solver, ascending order
        Eigen::SelfAdjointEigenSolver< Eigen::MatrixXcd >  ref( to_eigen( a ) );

        for ( std::size_t k = 0; k < n; ++k )
            EXPECT_NEAR( es.values[k], ref.eigenvalues()( n - 1 - k ), 1e-12 * scale );
    }
}

TEST( EigenspaceAtOne, Examples )
{
    const auto  s = eigenspace_at_one( ComplexMatrix::diagonal( { 1.0, 0.25 } ) );

    ASSERT_EQ( s.dim(), 1u );
    EXPECT_TRUE( MatrixNear( orthogonal_projection( s ), ComplexMatrix::diagonal( { 1.0, 0.0 } ), 1e-15 ) );

    EXPECT_EQ( eigenspace_at_one( ComplexMatrix::identity( 3 ) ).dim(), 3u );
    EXPECT_TRUE( eigenspace_at_one( ComplexMatrix::diagonal( { 0.9, 0.5 } ) ).is_zero() );
}

TEST( EigenspaceAtOne, WindowAndErrors )
{
    // inside the window by convention
    EXPECT_EQ( eigenspace_at_one( ComplexMatrix::diagonal( { 1.0 - 1e-12, 0.0 } ) ).dim(), 1u );
    EXPECT_EQ( eigenspace_at_one( ComplexMatrix::diagonal( { 1.0 - 1e-6, 0.0 } ) ).dim(), 0u );

    EXPECT_THROW( eigenspace_at_one( ComplexMatrix::diagonal( { 1.5, 0.0 } ) ), NotContractivePositive );
    EXPECT_THROW( eigenspace_at_one( ComplexMatrix::diagonal( { 1.0, -0.5 } ) ), NotContractivePositive );
    EXPECT_THROW( eigenspace_at_one( ComplexMatrix{ { 0, 1 }, { 0, 0 } } ), NotHermitian );
}

TEST( EigenspaceAtOne, RecoversProjections )
{
    random::Engine  rng( 11 );

    for ( int trial = 0; trial < 100; ++trial )
    {
        const auto  n = random::uniform_index( rng, 1, 8 );
        const auto  k = random::uniform_index( rng, 0, n );
        const auto  b = random::isometry( rng, n, k );
        const auto  p = b * adjoint( b );

        EXPECT_TRUE( MatrixNear( orthogonal_projection( eigenspace_at_one( p ) ), p, 1e-9 ) );
    }
}

TEST( OrthogonalProjection, Examples )
{
    const auto  e1 = Subspace::from_orthonormal( ComplexMatrix{ { 1 }, { 0 } } );

    EXPECT_EQ( orthogonal_projection( e1 ), ComplexMatrix::diagonal( { 1.0, 0.0 } ) );
    EXPECT_EQ( orthogonal_projection( Subspace( 3 ) ), ComplexMatrix( 3, 3 ) );

    const double  r = 1 / std::sqrt( 2.0 );
    const auto    s = Subspace::from_orthonormal( ComplexMatrix{ { r }, { r } } );

    EXPECT_TRUE( MatrixNear( orthogonal_projection( s ), ComplexMatrix{ { 0.5, 0.5 }, { 0.5, 0.5 } }, 1e-15 ) );
    EXPECT_THROW( Subspace::from_orthonormal( ComplexMatrix{ { 1 }, { 1 } } ), InvalidValue );
}

TEST( PsdOrder, Examples )
{
    EXPECT_TRUE( psd_order_leq( ComplexMatrix::diagonal( { 1.0, 0.0 } ), ComplexMatrix::diagonal( { 1.0, 0.25 } ) ) );
    EXPECT_FALSE( psd_order_leq( ComplexMatrix::identity( 2 ), ComplexMatrix::diagonal( { 1.0, 0.0 } ) ) );

    random::Engine  rng( 3 );

    EXPECT_TRUE( psd_order_leq( ComplexMatrix( 3, 3 ), random_psd( rng, 3 ) ) );
    EXPECT_THROW( psd_order_leq( ComplexMatrix( 2, 2 ), ComplexMatrix( 3, 3 ) ), ShapeMismatch );
    EXPECT_THROW( psd_order_leq( ComplexMatrix{ { 0, 1 }, { 0, 0 } }, ComplexMatrix( 2, 2 ) ), NotHermitian );
}

TEST( PsdOrder, ReflexiveAndTransitive )
{
    random::Engine  rng( 5 );
    const Tolerance tol;
    const Tolerance tol3{ .eq = 3 * tol.eq };

    for ( int trial = 0; trial < 100; ++trial )
    {
        const auto  n = random::uniform_index( rng, 1, 6 );
        const auto  a = random_psd( rng, n );
        const auto  b = a + random_psd( rng, n );
        const auto  c = b + random_psd( rng, n );

        EXPECT_TRUE( psd_order_leq( a, a, tol ) );
        ASSERT_TRUE( psd_order_leq( a, b, tol ) && psd_order_leq( b, c, tol ) );
        EXPECT_TRUE( psd_order_leq( a, c, tol3 ) );
    }
}

TEST( Spans, AgainstEigenRankRevealing )
{
    random::Engine  rng( 13 );

    for ( int trial = 0; trial < 100; ++trial )
    {
        const auto  rows = random::uniform_index( rng, 1, 9 );
        const auto  cols = random::uniform_index( rng, 1, 9 );
        const auto  rank = random::uniform_index( rng, 0, std::min( rows, cols ) );
        const auto  m    = random::gaussian( rng, rows, rank ) * random::gaussian( rng, rank, cols );

        Eigen::CompleteOrthogonalDecomposition< Eigen::MatrixXcd >  cod( to_eigen( m ) );

        const auto  range = column_span( m );
        const auto  ker   = null_space( m );

        EXPECT_EQ( range.dim(), static_cast< std::size_t >( cod.rank() ) );
        EXPECT_EQ( ker.dim(), cols - range.dim() );
        EXPECT_TRUE( MatrixNear( m * ker.basis(), ComplexMatrix( rows, ker.dim() ), 1e-9 * std::max( 1.0, frobenius_norm( m ) ) ) );
        EXPECT_LE( inclusion_residual( column_span( m * random::gaussian( rng, cols, 3 ) ), range ), 1e-9 );

        // pseudo inverse against Eigen's
        EXPECT_TRUE( MatrixNear( pseudo_inverse( m ), from_eigen( cod.pseudoInverse() ), 1e-7 ) );
    }
}

TEST( Spans, ComplementAndSum )
{
    random::Engine  rng( 17 );
    const auto      b = random::isometry( rng, 6, 2 );
    const auto      s = Subspace::from_orthonormal( b );
    const auto      c = orthogonal_complement( s );

    EXPECT_EQ( c.dim(), 4u );
    EXPECT_TRUE( MatrixNear( adjoint( b ) * c.basis(), ComplexMatrix( 2, 4 ), 1e-12 ) );
    EXPECT_TRUE( same_subspace( subspace_sum( s, c ), Subspace::full( 6 ), 1e-10 ) );
    EXPECT_FALSE( includes( s, c, 1e-10 ) );
}

TEST( OperatorNorm, Basics )
{
    EXPECT_NEAR( operator_norm( ComplexMatrix::diagonal( { 1.0, 0.5 } ) ), 1.0, 1e-15 );
    EXPECT_NEAR( operator_norm( ComplexMatrix::identity( 3 ) ), 1.0, 1e-15 );
    EXPECT_EQ( operator_norm( ComplexMatrix( 0, 4 ) ), 0.0 );
    EXPECT_NEAR( operator_norm( ComplexMatrix{ { 1, 1 } } ), std::sqrt( 2.0 ), 1e-15 );
}
