#include "piso/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace piso::random {

namespace {

// Gram-Schmidt with one reorthogonalization pass; columns assumed independent
ComplexMatrix
orthonormalize_columns ( ComplexMatrix a )
{
    for ( std::size_t j = 0; j < a.cols(); ++j )
    {
        auto  v = a.col( j );

        for ( int pass = 0; pass < 2; ++pass )
            for ( std::size_t k = 0; k < j; ++k )
            {
                const auto  qk = a.col( k );
                const auto  r  = inner( qk, v );

                for ( std::size_t i = 0; i < v.size(); ++i )
                    v[i] -= r * qk[i];
            }

        const auto  nv = norm2( v );

        for ( auto & x : v )
            x /= nv;
        a.set_col( j, v );
    }
    return a;
}

ComplexMatrix
block_columns ( const ComplexMatrix & x, const CStarAlgebra & alg, std::size_t block )
{
    return x.cols_range( alg.block_offset( block ), alg.block_sizes()[block] );
}

}// namespace anonymous

std::uint64_t
derive_seed ( std::uint64_t master, std::uint64_t index )
{
    std::uint64_t  z = master + 0x9e3779b97f4a7c15ULL * ( index + 1 );

    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
    return z ^ ( z >> 31 );
}

std::size_t
uniform_index ( Engine & rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution< std::size_t >( lo, hi )( rng );
}

double
uniform_real ( Engine & rng, double lo, double hi )
{
    return std::uniform_real_distribution< double >( lo, hi )( rng );
}

bool
coin ( Engine & rng, double p )
{
    return uniform_real( rng, 0.0, 1.0 ) < p;
}

ComplexMatrix
gaussian ( Engine & rng, std::size_t rows, std::size_t cols )
{
    std::normal_distribution< double >  nd( 0.0, std::sqrt( 0.5 ) );
    ComplexMatrix                       m( rows, cols );

    for ( auto & e : m.entries() )
    {
        const double  re = nd( rng );
        const double  im = nd( rng );

        e = Complex( re, im );
    }
    return m;
}

ComplexMatrix
unitary ( Engine & rng, std::size_t n )
{
    return orthonormalize_columns( gaussian( rng, n, n ) );
}

ComplexMatrix
isometry ( Engine & rng, std::size_t rows, std::size_t k )
{
    if ( k > rows )
        throw ShapeMismatch( "isometry: more columns than rows" );
    return orthonormalize_columns( gaussian( rng, rows, k ) );
}

ComplexMatrix
partial_isometry ( Engine & rng, std::size_t rows, std::size_t cols, std::size_t rank )
{
    if ( rank > std::min( rows, cols ) )
        throw ShapeMismatch( "partial_isometry: rank exceeds dimensions" );

    // a = Σ σ_k u_k v_k*, keep the top `rank` terms with σ_k := 1
    const auto     a  = gaussian( rng, rows, cols );
    const auto     es = hermitian_eigensystem( adjoint( a ) * a, { .eq = 1e-3 } );
    ComplexMatrix  u( rows, rank );
    ComplexMatrix  v( cols, rank );

    for ( std::size_t k = 0; k < rank; ++k )
    {
        const auto  vk = ComplexMatrix::column( es.vectors.col( k ) );
        const auto  uk = ( 1.0 / std::sqrt( es.values[k] ) ) * ( a * vk );

        u.set_col( k, vec( uk ) );
        v.set_col( k, vec( vk ) );
    }

    // the u_k are orthonormal up to eigensolver accuracy; polish them
    return orthonormalize_columns( u ) * adjoint( v );
}

ComplexMatrix
partial_isometry ( Engine & rng, std::size_t rows, std::size_t cols )
{
    return partial_isometry( rng, rows, cols, uniform_index( rng, 0, std::min( rows, cols ) ) );
}

ComplexMatrix
zero_one_diagonal ( Engine & rng, std::size_t rows, std::size_t cols, std::size_t rank )
{
    const auto  n = std::min( rows, cols );

    if ( rank > n )
        throw ShapeMismatch( "zero_one_diagonal: rank exceeds dimensions" );

    std::vector< std::size_t >  pos( n );

    std::iota( pos.begin(), pos.end(), 0 );
    std::shuffle( pos.begin(), pos.end(), rng );

    ComplexMatrix  d( rows, cols );

    for ( std::size_t k = 0; k < rank; ++k )
        d( pos[k], pos[k] ) = 1.0;
    return d;
}

std::pair< ComplexMatrix, ComplexMatrix >
commuting_pair ( Engine & rng, std::size_t rows, std::size_t mid, std::size_t cols )
{
    const auto  u  = unitary( rng, mid );
    const auto  dv = zero_one_diagonal( rng, rows, mid, uniform_index( rng, 0, std::min( rows, mid ) ) );
    const auto  dw = zero_one_diagonal( rng, mid, cols, uniform_index( rng, 0, std::min( mid, cols ) ) );

    return { unitary( rng, rows ) * dv * adjoint( u ), u * dw * adjoint( unitary( rng, cols ) ) };
}

ComplexMatrix
contraction ( Engine & rng, std::size_t rows, std::size_t cols, std::size_t ones, double gap )
{
    const auto  n = std::min( rows, cols );

    if ( ones > n )
        throw ShapeMismatch( "contraction: too many unit singular values" );

    ComplexMatrix  s( rows, cols );

    for ( std::size_t k = 0; k < n; ++k )
        s( k, k ) = k < ones ? 1.0 : uniform_real( rng, 0.0, 1.0 - gap );

    return unitary( rng, rows ) * s * adjoint( unitary( rng, cols ) );
}

ComplexMatrix
subprojection ( Engine & rng, const ComplexMatrix & within, std::size_t k )
{
    const auto  b = within * isometry( rng, within.cols(), k );

    return b * adjoint( b );
}

ComplexMatrix
unitary_near_identity ( Engine & rng, std::size_t n, double eps )
{
    const auto  g = gaussian( rng, n, n );
    auto        h = g + adjoint( g );

    if ( const auto nh = frobenius_norm( h ); nh > 0 )
        h *= 1.0 / nh;

    const auto     es = hermitian_eigensystem( h );
    ComplexMatrix  d( n, n );

    for ( std::size_t k = 0; k < n; ++k )
        d( k, k ) = std::polar( 1.0, eps * es.values[k] );
    return es.vectors * d * adjoint( es.vectors );
}

PartialFn
partial_function ( Engine & rng, const FiniteSet & source, const FiniteSet & target )
{
    std::vector< std::size_t >  free( target.size() );

    std::iota( free.begin(), free.end(), 0 );
    std::shuffle( free.begin(), free.end(), rng );

    std::map< std::string, std::string >  m;
    std::size_t                           next = 0;

    for ( const auto & b : source.labels() )
        if ( next < free.size() && coin( rng, 0.7 ) )
            m.emplace( b, target.labels()[ free[ next++ ] ] );

    return { source, target, std::move( m ) };
}

CStarAlgebra
algebra ( Engine & rng, std::size_t max_blocks, std::size_t max_block )
{
    std::vector< std::size_t >  sizes( uniform_index( rng, 1, max_blocks ) );

    for ( auto & s : sizes )
        s = uniform_index( rng, 1, max_block );
    return CStarAlgebra( std::move( sizes ) );
}

HilbertModule
module ( Engine & rng, const CStarAlgebra & alg, std::size_t max_lift )
{
    std::vector< std::size_t >  ranks( alg.num_blocks() );
    std::size_t                 total = 0;

    for ( std::size_t i = 0; i < ranks.size(); ++i )
    {
        ranks[i] = uniform_index( rng, 0, std::min< std::size_t >( 3, max_lift - total ) );
        total   += ranks[i];
    }

    if ( total == 0 )
    {
        ranks[ uniform_index( rng, 0, ranks.size() - 1 ) ] = 1;
        total = 1;
    }

    return module_with_ranges( rng, alg, uniform_index( rng, total, max_lift ), ranks );
}

HilbertModule
module_with_ranges ( Engine & rng, const CStarAlgebra & alg, std::size_t lift_dim, const std::vector< std::size_t > & ranks )
{
    if ( ranks.size() != alg.num_blocks() )
        throw ShapeMismatch( "module_with_ranges: one rank per block required" );
    if ( std::accumulate( ranks.begin(), ranks.end(), std::size_t( 0 ) ) > lift_dim )
        throw ShapeMismatch( "module_with_ranges: ranks exceed the lift dimension" );

    // mutually orthogonal K_i as consecutive column slices of one unitary
    const auto                    w = unitary( rng, lift_dim );
    std::vector< ComplexMatrix >  k;
    std::size_t                   off = 0;

    for ( auto r : ranks )
    {
        k.push_back( w.cols_range( off, r ) );
        off += r;
    }

    const auto                    draws = std::max< std::size_t >( 1, *std::max_element( ranks.begin(), ranks.end() ) );
    std::vector< ComplexMatrix >  seeds;

    for ( std::size_t d = 0; d < draws; ++d )
    {
        ComplexMatrix  x( lift_dim, alg.dim() );

        for ( std::size_t i = 0; i < alg.num_blocks(); ++i )
        {
            const auto  bi = k[i] * gaussian( rng, ranks[i], alg.block_sizes()[i] );

            for ( std::size_t r = 0; r < lift_dim; ++r )
                for ( std::size_t c = 0; c < bi.cols(); ++c )
                    x( r, alg.block_offset( i ) + c ) = bi( r, c );
        }
        seeds.push_back( std::move( x ) );
    }

    const auto  closure = close_under_algebra( alg, lift_dim, seeds );

    // greedy independent subset of { x b } as generators
    std::vector< ComplexMatrix >  cand;

    for ( const auto & x : seeds )
    {
        cand.push_back( x );
        for ( const auto & b : alg.basis() )
            cand.push_back( x * b );
    }

    std::vector< ComplexMatrix >  gens;
    Subspace                      span( lift_dim * alg.dim() );

    for ( const auto & c : cand )
    {
        if ( gens.size() == closure.dim() )
            break;

        const auto  v = vec( c );

        if ( distance_to( span, v ) <= 1e-3 * std::max( 1.0, norm2( v ) ) )
            continue;

        gens.push_back( c );

        std::vector< ComplexMatrix >  tmp;

        for ( const auto & g : gens )
            tmp.push_back( ComplexMatrix::column( vec( g ) ) );
        span = column_span( hstack( tmp, lift_dim * alg.dim() ) );
    }

    if ( gens.size() != closure.dim() )
    {
        gens.clear();
        for ( std::size_t j = 0; j < closure.dim(); ++j )
            gens.push_back( unvec( closure.vector( j ), lift_dim, alg.dim() ) );
    }

    return HilbertModule( alg, lift_dim, std::move( gens ) );
}

ComplexMatrix
block_range ( const HilbertModule & e, std::size_t block )
{
    std::vector< ComplexMatrix >  parts;

    for ( const auto & g : e.generators() )
        parts.push_back( block_columns( g, e.algebra(), block ) );

    return column_span( hstack( parts, e.lift_dim() ) ).basis();
}

ModuleMap
module_map ( Engine & rng, const HilbertModule & source, const HilbertModule & target, MapKind kind )
{
    ComplexMatrix  c( target.lift_dim(), source.lift_dim() );

    for ( std::size_t i = 0; i < source.algebra().num_blocks(); ++i )
    {
        const auto  ke = block_range( source, i );
        const auto  kf = block_range( target, i );
        const auto  n  = std::min( ke.cols(), kf.cols() );

        ComplexMatrix  mi;

        switch ( kind )
        {
            case MapKind::partial_isometry:
                mi = partial_isometry( rng, kf.cols(), ke.cols() );
                break;
            case MapKind::contraction:
                mi = contraction( rng, kf.cols(), ke.cols(), uniform_index( rng, 0, n ) );
                break;
            case MapKind::isometry:
                if ( kf.cols() < ke.cols() )
                    throw InvalidValue( "module_map: target block too small for an isometry" );
                mi = partial_isometry( rng, kf.cols(), ke.cols(), ke.cols() );
                break;
            case MapKind::coisometry:
                if ( kf.cols() > ke.cols() )
                    throw InvalidValue( "module_map: source block too small for a coisometry" );
                mi = partial_isometry( rng, kf.cols(), ke.cols(), kf.cols() );
                break;
        }

        c += kf * mi * adjoint( ke );
    }
    return ModuleMap::from_lift( source, target, c );
}

std::pair< ModuleMap, ModuleMap >
commuting_module_pair ( Engine & rng, const HilbertModule & d, const HilbertModule & e, const HilbertModule & f )
{
    ComplexMatrix  v( f.lift_dim(), e.lift_dim() );
    ComplexMatrix  w( e.lift_dim(), d.lift_dim() );

    for ( std::size_t i = 0; i < e.algebra().num_blocks(); ++i )
    {
        const auto  kd = block_range( d, i );
        const auto  ke = block_range( e, i );
        const auto  kf = block_range( f, i );

        auto [ vi, wi ] = commuting_pair( rng, kf.cols(), ke.cols(), kd.cols() );

        v += kf * vi * adjoint( ke );
        w += ke * wi * adjoint( kd );
    }
    return { ModuleMap::from_lift( e, f, v ), ModuleMap::from_lift( d, e, w ) };
}

ComplexMatrix
element ( Engine & rng, const HilbertModule & e )
{
    return e.element( vec( gaussian( rng, e.dim(), 1 ) ) );
}

}// namespace piso::random
