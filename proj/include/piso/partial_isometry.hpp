#pragma once

#include "piso/linalg.hpp"

namespace piso {

struct OperatorClass
{
    bool is_contraction      = false;
    bool is_projection       = false;
    bool is_isometry         = false;
    bool is_coisometry       = false;
    bool is_partial_isometry = false;
    bool is_unitary          = false;

    friend bool operator == ( const OperatorClass &, const OperatorClass & ) = default;
};

// human-readable summary, e.g. "unitary" or "contraction; not a partial isometry"
std::string describe ( const OperatorClass & c );

//
// All residuals are Frobenius norms compared against tol.eq; contraction is
// decided on the spectral norm.
//
OperatorClass classify ( const ComplexMatrix & a, const Tolerance & tol = {} );

// ‖a a* a − a‖_F
double partial_isometry_residual ( const ComplexMatrix & a );

//
// The four conditions on a product vw of partial isometries, each evaluated
// on its own residual. They are equivalent in exact arithmetic; the fields
// are kept separate so that a disagreement is observable.
//
struct ProductCriterion
{
    bool product_is_pi       = false;   // vw (vw)* vw = vw
    bool idempotent          = false;   // e = v*v ww* satisfies e² = e
    bool projection          = false;   // e idempotent and e = e*
    bool projections_commute = false;   // v*v ww* = ww* v*v

    double product_residual     = 0;
    double idempotent_residual  = 0;
    double selfadjoint_residual = 0;
    double commutator_residual  = 0;

    bool consistent () const
    {
        return product_is_pi == idempotent && idempotent == projection && projection == projections_commute;
    }
};

// throws NotPartialIsometry, ShapeMismatch
ProductCriterion product_criterion ( const ComplexMatrix & v, const ComplexMatrix & w, const Tolerance & tol = {} );

// closest partial isometry with the same numerical rank (u_k v_k* from an SVD);
// used to clean up slightly perturbed inputs. Singular values at or below
// tol.rank_cutoff() count as zero.
ComplexMatrix nearest_partial_isometry ( const ComplexMatrix & a, const Tolerance & tol = {} );

// { x : ‖cx‖ = ‖x‖ }, the eigenspace of c*c at one; throws NotContraction
Subspace isometric_subspace ( const ComplexMatrix & c, const Tolerance & tol = {} );

struct ContainedPI
{
    ComplexMatrix  p_c;        // projection onto the isometric subspace
    ComplexMatrix  v;          // c · p_c
    Subspace       subspace;
};

// throws NotContraction
ContainedPI contained_partial_isometry ( const ComplexMatrix & c, const Tolerance & tol = {} );

//
// v·w = vw p, p the projection onto the isometric subspace of vw. Associative
// on partial isometries. Throws NotPartialIsometry, ShapeMismatch.
//
ComplexMatrix dot_compose ( const ComplexMatrix & v, const ComplexMatrix & w, const Tolerance & tol = {} );

// same, also returning the domain projection p
std::pair< ComplexMatrix, ComplexMatrix >
dot_compose_with_domain ( const ComplexMatrix & v, const ComplexMatrix & w, const Tolerance & tol = {} );

}// namespace piso
