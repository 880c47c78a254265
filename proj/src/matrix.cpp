#include "piso/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace piso {

ComplexMatrix::ComplexMatrix ( std::size_t rows, std::size_t cols )
    : rows_( rows ), cols_( cols ), entries_( rows * cols )
{}

ComplexMatrix::ComplexMatrix ( std::size_t rows, std::size_t cols, std::vector< Complex > entries )
    : rows_( rows ), cols_( cols ), entries_( std::move( entries ) )
{
    if ( entries_.size() != rows_ * cols_ )
        throw ShapeMismatch( "matrix: " + std::to_string( entries_.size() ) + " entries for shape "
                             + std::to_string( rows_ ) + "x" + std::to_string( cols_ ) );
    if ( ! all_finite( *this ) )
        throw InvalidValue( "matrix: non-finite entry" );
}

ComplexMatrix::ComplexMatrix ( std::initializer_list< std::initializer_list< Complex > > rows )
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve( rows_ * cols_ );

    for ( const auto & r : rows )
    {
        if ( r.size() != cols_ )
            throw ShapeMismatch( "matrix: ragged initializer" );
        entries_.insert( entries_.end(), r.begin(), r.end() );
    }
}

ComplexMatrix
ComplexMatrix::identity ( std::size_t n )
{
    ComplexMatrix  m( n, n );

    for ( std::size_t i = 0; i < n; ++i )
        m( i, i ) = 1.0;
    return m;
}

ComplexMatrix
ComplexMatrix::diagonal ( std::span< const Complex > d )
{
    ComplexMatrix  m( d.size(), d.size() );

    for ( std::size_t i = 0; i < d.size(); ++i )
        m( i, i ) = d[i];
    return m;
}

ComplexMatrix
ComplexMatrix::diagonal ( std::initializer_list< Complex > d )
{
    return diagonal( std::span< const Complex >( d.begin(), d.size() ) );
}

ComplexMatrix
ComplexMatrix::column ( std::span< const Complex > v )
{
    return ComplexMatrix( v.size(), 1, std::vector< Complex >( v.begin(), v.end() ) );
}

std::vector< Complex >
ComplexMatrix::col ( std::size_t j ) const
{
    std::vector< Complex >  v( rows_ );

    for ( std::size_t i = 0; i < rows_; ++i )
        v[i] = (*this)( i, j );
    return v;
}

void
ComplexMatrix::set_col ( std::size_t j, std::span< const Complex > v )
{
    if ( v.size() != rows_ )
        throw ShapeMismatch( "set_col: length mismatch" );
    for ( std::size_t i = 0; i < rows_; ++i )
        (*this)( i, j ) = v[i];
}

ComplexMatrix
ComplexMatrix::cols_range ( std::size_t first, std::size_t count ) const
{
    return block( 0, first, rows_, count );
}

ComplexMatrix
ComplexMatrix::block ( std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc ) const
{
    if ( r0 + nr > rows_ || c0 + nc > cols_ )
        throw ShapeMismatch( "block: out of range" );

    ComplexMatrix  b( nr, nc );

    for ( std::size_t i = 0; i < nr; ++i )
        for ( std::size_t j = 0; j < nc; ++j )
            b( i, j ) = (*this)( r0 + i, c0 + j );
    return b;
}

ComplexMatrix &
ComplexMatrix::operator += ( const ComplexMatrix & b )
{
    if ( rows_ != b.rows_ || cols_ != b.cols_ )
        throw ShapeMismatch( "add: " + shape_string( *this ) + " vs " + shape_string( b ) );
    for ( std::size_t k = 0; k < entries_.size(); ++k )
        entries_[k] += b.entries_[k];
    return *this;
}

ComplexMatrix &
ComplexMatrix::operator -= ( const ComplexMatrix & b )
{
    if ( rows_ != b.rows_ || cols_ != b.cols_ )
        throw ShapeMismatch( "sub: " + shape_string( *this ) + " vs " + shape_string( b ) );
    for ( std::size_t k = 0; k < entries_.size(); ++k )
        entries_[k] -= b.entries_[k];
    return *this;
}

ComplexMatrix &
ComplexMatrix::operator *= ( Complex s )
{
    for ( auto & e : entries_ )
        e *= s;
    return *this;
}

ComplexMatrix operator + ( ComplexMatrix a, const ComplexMatrix & b ) { a += b; return a; }
ComplexMatrix operator - ( ComplexMatrix a, const ComplexMatrix & b ) { a -= b; return a; }
ComplexMatrix operator * ( Complex s, ComplexMatrix a )               { a *= s; return a; }
ComplexMatrix operator - ( ComplexMatrix a )                          { a *= -1.0; return a; }

ComplexMatrix
operator * ( const ComplexMatrix & a, const ComplexMatrix & b )
{
    if ( a.cols() != b.rows() )
        throw ShapeMismatch( "product: " + shape_string( a ) + " * " + shape_string( b ) );

    ComplexMatrix  c( a.rows(), b.cols() );

    for ( std::size_t i = 0; i < a.rows(); ++i )
        for ( std::size_t k = 0; k < a.cols(); ++k )
        {
            const auto  aik = a( i, k );

            if ( aik == Complex( 0 ) )
                continue;
            for ( std::size_t j = 0; j < b.cols(); ++j )
                c( i, j ) += aik * b( k, j );
        }
    return c;
}

ComplexMatrix
adjoint ( const ComplexMatrix & a )
{
    ComplexMatrix  t( a.cols(), a.rows() );

    for ( std::size_t i = 0; i < a.rows(); ++i )
        for ( std::size_t j = 0; j < a.cols(); ++j )
            t( j, i ) = std::conj( a( i, j ) );
    return t;
}

ComplexMatrix
hstack ( std::span< const ComplexMatrix > parts, std::size_t rows )
{
    std::size_t  cols = 0;

    for ( const auto & p : parts )
    {
        if ( p.rows() != rows )
            throw ShapeMismatch( "hstack: row mismatch" );
        cols += p.cols();
    }

    ComplexMatrix  m( rows, cols );
    std::size_t    off = 0;

    for ( const auto & p : parts )
    {
        for ( std::size_t i = 0; i < rows; ++i )
            for ( std::size_t j = 0; j < p.cols(); ++j )
                m( i, off + j ) = p( i, j );
        off += p.cols();
    }
    return m;
}

ComplexMatrix
vstack ( std::span< const ComplexMatrix > parts, std::size_t cols )
{
    std::size_t  rows = 0;

    for ( const auto & p : parts )
    {
        if ( p.cols() != cols )
            throw ShapeMismatch( "vstack: column mismatch" );
        rows += p.rows();
    }

    ComplexMatrix  m( rows, cols );
    std::size_t    off = 0;

    for ( const auto & p : parts )
    {
        for ( std::size_t i = 0; i < p.rows(); ++i )
            for ( std::size_t j = 0; j < cols; ++j )
                m( off + i, j ) = p( i, j );
        off += p.rows();
    }
    return m;
}

std::vector< Complex >
vec ( const ComplexMatrix & a )
{
    return { a.entries().begin(), a.entries().end() };
}

ComplexMatrix
unvec ( std::span< const Complex > v, std::size_t rows, std::size_t cols )
{
    return ComplexMatrix( rows, cols, std::vector< Complex >( v.begin(), v.end() ) );
}

double
frobenius_norm ( const ComplexMatrix & a )
{
    return norm2( a.entries() );
}

double
frobenius_distance ( const ComplexMatrix & a, const ComplexMatrix & b )
{
    if ( a.rows() != b.rows() || a.cols() != b.cols() )
        throw ShapeMismatch( "distance: " + shape_string( a ) + " vs " + shape_string( b ) );

    double  s = 0;

    for ( std::size_t k = 0; k < a.size(); ++k )
        s += std::norm( a.entries()[k] - b.entries()[k] );
    return std::sqrt( s );
}

bool
all_finite ( const ComplexMatrix & a )
{
    for ( const auto & e : a.entries() )
        if ( ! std::isfinite( e.real() ) || ! std::isfinite( e.imag() ) )
            return false;
    return true;
}

Complex
inner ( std::span< const Complex > x, std::span< const Complex > y )
{
    if ( x.size() != y.size() )
        throw ShapeMismatch( "inner: length mismatch" );

    Complex  s = 0;

    for ( std::size_t i = 0; i < x.size(); ++i )
        s += std::conj( x[i] ) * y[i];
    return s;
}

double
norm2 ( std::span< const Complex > x )
{
    double  s = 0;

    for ( const auto & e : x )
        s += std::norm( e );
    return std::sqrt( s );
}

std::string
sci ( double x )
{
    char  buf[32];

    std::snprintf( buf, sizeof( buf ), "%.3e", x );
    return buf;
}

std::string
shape_string ( const ComplexMatrix & a )
{
    std::ostringstream  os;

    os << a.rows() << "x" << a.cols();
    return os.str();
}

void
Tolerance::validate () const
{
    for ( double t : { eq, eig1, ortho } )
        if ( ! ( t >= 0.0 && t <= 1e-3 ) )
            throw InvalidValue( "tolerance outside [0, 1e-3]: " + sci( t ) );
}

}// namespace piso
