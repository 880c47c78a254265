#pragma once

#include <vector>

#include "piso/matrix.hpp"

namespace piso {

//
// Subspace of C^ambient_dim given by an orthonormal basis stored as the
// columns of an ambient_dim × k matrix.
//
class Subspace
{
public:
    explicit Subspace ( std::size_t ambient_dim = 0 )
        : basis_( ambient_dim, 0 )
    {}

    // throws InvalidValue if the columns are not orthonormal within tol.ortho
    static Subspace from_orthonormal ( ComplexMatrix basis, const Tolerance & tol = {} );

    static Subspace full ( std::size_t ambient_dim );

    std::size_t ambient_dim () const noexcept { return basis_.rows(); }
    std::size_t dim () const noexcept { return basis_.cols(); }
    bool        is_zero () const noexcept { return basis_.cols() == 0; }

    const ComplexMatrix &  basis () const noexcept { return basis_; }
    std::vector< Complex > vector ( std::size_t k ) const { return basis_.col( k ); }

private:
    ComplexMatrix  basis_;
};

struct Eigensystem
{
    std::vector< double >  values;   // descending
    ComplexMatrix          vectors;  // orthonormal columns, vectors.col(k) ↔ values[k]
};

// cyclic Jacobi; throws NotHermitian if ‖a − a*‖_F > tol.eq
Eigensystem hermitian_eigensystem ( const ComplexMatrix & a, const Tolerance & tol = {} );

// spectral norm
double operator_norm ( const ComplexMatrix & a );

// ‖a − a*‖_F ≤ tol.eq
bool is_hermitian ( const ComplexMatrix & a, const Tolerance & tol = {} );

//
// span of the eigenvectors of a with eigenvalue ≥ 1 − tol.eig1. Requires a
// Hermitian, positive semidefinite and ‖a‖ ≤ 1 + tol.eq.
//
// Eigenvalues just below one (e.g. 1 − 1e-12) fall inside the window and are
// classified as isometric directions.
//
Subspace eigenspace_at_one ( const ComplexMatrix & a, const Tolerance & tol = {} );

// Σ b b* over the basis
ComplexMatrix orthogonal_projection ( const Subspace & s );

// smallest eigenvalue of (b − a) ≥ −tol.eq
bool psd_order_leq ( const ComplexMatrix & a, const ComplexMatrix & b, const Tolerance & tol = {} );

// smallest eigenvalue ≥ −tol.eq
bool is_psd ( const ComplexMatrix & a, const Tolerance & tol = {} );

//
// rank decisions: a singular value σ counts as nonzero iff
// σ > tol.rank_cutoff() · max(1, σ_max)
//
Subspace column_span ( const ComplexMatrix & m, const Tolerance & tol = {} );
Subspace null_space  ( const ComplexMatrix & m, const Tolerance & tol = {} );

Subspace orthogonal_complement ( const Subspace & s, const Tolerance & tol = {} );

// span of the union of the two bases
Subspace subspace_sum ( const Subspace & a, const Subspace & b, const Tolerance & tol = {} );

// largest distance of a unit basis vector of `inner` from `outer`
double inclusion_residual ( const Subspace & inner, const Subspace & outer );

// inner ⊆ outer, decided by inclusion_residual ≤ slack
bool includes ( const Subspace & outer, const Subspace & inner, double slack );
bool same_subspace ( const Subspace & a, const Subspace & b, double slack );

// distance of x from s
double distance_to ( const Subspace & s, std::span< const Complex > x );

// Moore-Penrose pseudo inverse via the Hermitian eigensystem of a*a
ComplexMatrix pseudo_inverse ( const ComplexMatrix & a, const Tolerance & tol = {} );

}// namespace piso
