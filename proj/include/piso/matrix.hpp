#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace piso {

using Complex = std::complex<double>;

//
// error hierarchy; every failure of a precondition maps to one of these
//
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ShapeMismatch        : public Error { public: using Error::Error; };
class NotHermitian         : public Error { public: using Error::Error; };
class NotContractivePositive : public Error { public: using Error::Error; };
class NotContraction       : public Error { public: using Error::Error; };
class NotPartialIsometry   : public Error { public: using Error::Error; };
class InvalidValue         : public Error { public: using Error::Error; };
class TargetSourceMismatch : public Error { public: using Error::Error; };
class IllFormedMap         : public Error { public: using Error::Error; };
class NotInAlgebra         : public Error { public: using Error::Error; };
class InvalidModule        : public Error { public: using Error::Error; };
class NotComplemented      : public Error { public: using Error::Error; };

//
// Dense rectangular complex matrix, row-major. 0×n and n×0 are legal and
// stand for maps to or from the zero space.
//
class ComplexMatrix
{
public:
    ComplexMatrix() = default;
    ComplexMatrix ( std::size_t rows, std::size_t cols );
    ComplexMatrix ( std::size_t rows, std::size_t cols, std::vector< Complex > entries );

    // nested row lists, e.g. {{1, 0}, {0, 0.5}}
    ComplexMatrix ( std::initializer_list< std::initializer_list< Complex > > rows );

    static ComplexMatrix identity ( std::size_t n );
    static ComplexMatrix zero     ( std::size_t rows, std::size_t cols ) { return { rows, cols }; }
    static ComplexMatrix diagonal ( std::span< const Complex > d );
    static ComplexMatrix diagonal ( std::initializer_list< Complex > d );
    static ComplexMatrix column   ( std::span< const Complex > v );

    std::size_t rows () const noexcept { return rows_; }
    std::size_t cols () const noexcept { return cols_; }
    std::size_t size () const noexcept { return entries_.size(); }
    bool        is_square () const noexcept { return rows_ == cols_; }
    bool        empty () const noexcept { return entries_.empty(); }

    Complex &       operator () ( std::size_t i, std::size_t j )       { return entries_[ i * cols_ + j ]; }
    const Complex & operator () ( std::size_t i, std::size_t j ) const { return entries_[ i * cols_ + j ]; }

    std::span< const Complex > entries () const noexcept { return entries_; }
    std::span< Complex >       entries ()       noexcept { return entries_; }

    std::vector< Complex > col ( std::size_t j ) const;
    void                   set_col ( std::size_t j, std::span< const Complex > v );

    // columns [first, first+count)
    ComplexMatrix cols_range ( std::size_t first, std::size_t count ) const;
    ComplexMatrix block ( std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc ) const;

    ComplexMatrix & operator += ( const ComplexMatrix & b );
    ComplexMatrix & operator -= ( const ComplexMatrix & b );
    ComplexMatrix & operator *= ( Complex s );

    friend bool operator == ( const ComplexMatrix &, const ComplexMatrix & ) = default;

private:
    std::size_t            rows_ = 0;
    std::size_t            cols_ = 0;
    std::vector< Complex > entries_;
};

ComplexMatrix operator + ( ComplexMatrix a, const ComplexMatrix & b );
ComplexMatrix operator - ( ComplexMatrix a, const ComplexMatrix & b );
ComplexMatrix operator * ( const ComplexMatrix & a, const ComplexMatrix & b );
ComplexMatrix operator * ( Complex s, ComplexMatrix a );
ComplexMatrix operator - ( ComplexMatrix a );

// conjugate transpose
ComplexMatrix adjoint ( const ComplexMatrix & a );

// horizontal / vertical concatenation
ComplexMatrix hstack ( std::span< const ComplexMatrix > parts, std::size_t rows );
ComplexMatrix vstack ( std::span< const ComplexMatrix > parts, std::size_t cols );

// row-major flattening to an (rows·cols)×1 column and back
std::vector< Complex > vec   ( const ComplexMatrix & a );
ComplexMatrix          unvec ( std::span< const Complex > v, std::size_t rows, std::size_t cols );

double frobenius_norm ( const ComplexMatrix & a );
double frobenius_distance ( const ComplexMatrix & a, const ComplexMatrix & b );
bool   all_finite ( const ComplexMatrix & a );

Complex inner ( std::span< const Complex > x, std::span< const Complex > y );  // Σ conj(x_i) y_i
double  norm2 ( std::span< const Complex > x );

std::string shape_string ( const ComplexMatrix & a );

// %.3e, for residuals in messages
std::string sci ( double x );

//
// tolerance policy shared by every predicate
//
struct Tolerance
{
    double eq    = 1e-9;   // entrywise / norm equality slack
    double eig1  = 1e-9;   // width of the eigenvalue-1 window
    double ortho = 1e-10;  // orthonormality slack

    // throws InvalidValue unless all fields lie in [0, 1e-3]
    void validate () const;

    // singular value cutoff used for rank decisions (null spaces, spans)
    double rank_cutoff () const { return std::max( 100.0 * eq, 1e-12 ); }
};

}// namespace piso
