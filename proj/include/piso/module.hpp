#pragma once

#include <optional>
#include <vector>

#include "piso/partial_isometry.hpp"

//
// Hilbert modules over finite-dimensional C*-algebras, in the concrete
// operator picture: the algebra B = M_{n_1} ⊕ ... ⊕ M_{n_k} acts block-diagonally
// on G = C^n, and a module element x is stored as the operator L_x : G → C^m
// (m the lift dimension) with
//
//     ⟨x, y⟩ = L_x* L_y ∈ B,     L_{xb} = L_x b,     C L_x = L_{cx}
//
// for a right linear map c with lift C. Every module computation is carried
// out on these m×n matrices; there is no separate abstract element type.
//
// At finite dimension all such modules are self-dual, every right linear map
// is adjointable and every closed submodule is complemented, so
// NotComplemented is never raised here.
//

namespace piso {

class CStarAlgebra
{
public:
    explicit CStarAlgebra ( std::vector< std::size_t > block_sizes );

    // the complex numbers, one block of size 1
    static CStarAlgebra scalars () { return CStarAlgebra( { 1 } ); }

    const std::vector< std::size_t > & block_sizes () const noexcept { return blocks_; }
    std::size_t num_blocks () const noexcept { return blocks_.size(); }
    std::size_t dim () const noexcept { return dim_; }            // n, the size of G
    std::size_t block_offset ( std::size_t i ) const { return offsets_[i]; }

    // elementary matrices e_jk inside each block; a scalar basis of B
    const std::vector< ComplexMatrix > & basis () const noexcept { return basis_; }

    // a is n×n and vanishes off the diagonal blocks, within slack (Frobenius)
    double off_block_norm ( const ComplexMatrix & a ) const;
    bool   contains ( const ComplexMatrix & a, double slack ) const;

    // the center is C^k; reported as a diagnostic only
    std::size_t center_dim () const noexcept { return blocks_.size(); }

    friend bool operator == ( const CStarAlgebra & a, const CStarAlgebra & b ) { return a.blocks_ == b.blocks_; }

private:
    std::vector< std::size_t >    blocks_;
    std::vector< std::size_t >    offsets_;
    std::size_t                   dim_ = 0;
    std::vector< ComplexMatrix >  basis_;
};

class HilbertModule
{
public:
    //
    // generators: linearly independent m×n matrices whose scalar span is
    // closed under right multiplication by B and whose pairwise products
    // L_x* L_y lie in B; throws InvalidModule otherwise
    //
    HilbertModule ( CStarAlgebra algebra, std::size_t lift_dim, std::vector< ComplexMatrix > generators,
                    const Tolerance & tol = {} );

    // C^dim over the scalars, generators e_1..e_dim
    static HilbertModule hilbert_space ( std::size_t dim );

    // B as a module over itself, L_x = x, generators the elementary matrices
    static HilbertModule algebra_module ( const CStarAlgebra & algebra );

    const CStarAlgebra &                 algebra () const noexcept { return algebra_; }
    std::size_t                          lift_dim () const noexcept { return lift_dim_; }
    std::size_t                          dim () const noexcept { return generators_.size(); }
    const std::vector< ComplexMatrix > & generators () const noexcept { return generators_; }
    const ComplexMatrix &                generator ( std::size_t j ) const { return generators_[j]; }

    // orthonormal basis of the scalar span in C^{m·n} (row-major vec)
    const Subspace & span () const noexcept { return span_; }

    // coordinates of x with respect to the generators (least squares)
    std::vector< Complex > coordinates ( const ComplexMatrix & x ) const;
    ComplexMatrix          element ( std::span< const Complex > coords ) const;

    // distance of x from the scalar span
    double distance ( const ComplexMatrix & x ) const;
    bool   contains ( const ComplexMatrix & x, double slack ) const { return distance( x ) <= slack; }

    // closure of span{ L_x g }, a subspace of C^m
    Subspace lifted_space ( const Tolerance & tol = {} ) const;

    // the inner products ⟨x, y⟩ span all of B in every block
    bool is_full ( const Tolerance & tol = {} ) const;

    // same algebra, lift dimension and scalar span
    bool same_as ( const HilbertModule & other, double slack ) const;

private:
    CStarAlgebra                  algebra_;
    std::size_t                   lift_dim_ = 0;
    std::vector< ComplexMatrix >  generators_;
    Subspace                      span_;
    ComplexMatrix                 coord_map_;   // pseudo inverse of [vec(g_1) ... vec(g_d)]
};

// ⟨x, y⟩ = L_x* L_y; throws NotInAlgebra if it leaves the block structure
ComplexMatrix module_inner ( const HilbertModule & e, const ComplexMatrix & x, const ComplexMatrix & y,
                             const Tolerance & tol = {} );

// span of the given elements closed under right multiplication by B, as an
// orthonormal vec basis
Subspace close_under_algebra ( const CStarAlgebra & algebra, std::size_t lift_dim,
                               std::span< const ComplexMatrix > elements, const Tolerance & tol = {} );

//
// right linear map between modules over the same algebra. Stored both as the
// action on source generators (target coordinates, dim F × dim E) and as its
// lift C : C^{m_E} → C^{m_F}, which vanishes off the lifted source space.
//
class ModuleMap
{
public:
    // throws IllFormedMap if no well-defined lift exists or the map is not
    // right linear
    static ModuleMap from_action ( HilbertModule source, HilbertModule target, ComplexMatrix action,
                                   const Tolerance & tol = {} );

    // throws IllFormedMap if C does not map the source into the target
    static ModuleMap from_lift ( HilbertModule source, HilbertModule target, const ComplexMatrix & lift,
                                 const Tolerance & tol = {} );

    static ModuleMap identity ( const HilbertModule & e );
    static ModuleMap zero ( const HilbertModule & source, const HilbertModule & target );

    const HilbertModule & source () const noexcept { return source_; }
    const HilbertModule & target () const noexcept { return target_; }
    const ComplexMatrix & action () const noexcept { return action_; }
    const ComplexMatrix & lift () const noexcept { return lift_; }

    ComplexMatrix apply ( const ComplexMatrix & x ) const { return lift_ * x; }

    double norm () const { return operator_norm( lift_ ); }
    bool   is_contraction ( const Tolerance & tol = {} ) const { return norm() <= 1.0 + tol.eq; }

    // largest ‖c(xb) − c(x)b‖ over generators x and algebra basis elements b
    double right_linearity_residual () const;

private:
    ModuleMap ( HilbertModule source, HilbertModule target, ComplexMatrix action, ComplexMatrix lift );

    HilbertModule  source_;
    HilbertModule  target_;
    ComplexMatrix  action_;
    ComplexMatrix  lift_;
};

// the lift of the source → target map C, as computed from an action
ComplexMatrix lift ( const ModuleMap & c );

// v ∘ w; throws TargetSourceMismatch unless w.target() is v.source()
ModuleMap compose ( const ModuleMap & v, const ModuleMap & w, const Tolerance & tol = {} );

// scalar multiple, convenience for tests and generators
ModuleMap scale ( Complex s, const ModuleMap & c, const Tolerance & tol = {} );

// the module adjoint c*, lifted as C*
ModuleMap adjoint ( const ModuleMap & c, const Tolerance & tol = {} );

//
// closed submodule of a parent module, as an orthonormal vec basis of its
// scalar span
//
class Submodule
{
public:
    // throws InvalidModule unless the span lies in the parent and is closed
    // under right multiplication
    Submodule ( HilbertModule parent, Subspace span, const Tolerance & tol = {} );

    static Submodule zero ( const HilbertModule & parent );
    static Submodule full ( const HilbertModule & parent );

    // submodule generated by the given elements
    static Submodule generated_by ( const HilbertModule & parent, std::span< const ComplexMatrix > elements,
                                    const Tolerance & tol = {} );

    const HilbertModule & parent () const noexcept { return parent_; }
    const Subspace &      span () const noexcept { return span_; }
    std::size_t           dim () const noexcept { return span_.dim(); }
    bool                  is_zero () const noexcept { return span_.is_zero(); }

    std::vector< ComplexMatrix > elements () const;

    double distance ( const ComplexMatrix & x ) const;
    bool   contains ( const ComplexMatrix & x, double slack ) const { return distance( x ) <= slack; }

    // largest distance of a right multiple x·b (x basis, b algebra basis) from the span
    double closure_residual () const;

    // the submodule as a module of its own
    HilbertModule as_module ( const Tolerance & tol = {} ) const;

private:
    HilbertModule  parent_;
    Subspace       span_;
};

bool includes ( const Submodule & outer, const Submodule & inner, double slack );
bool same_submodule ( const Submodule & a, const Submodule & b, double slack );
double inclusion_residual ( const Submodule & inner, const Submodule & outer );

// c(s) ⊂ c.target()
Submodule image ( const ModuleMap & c, const Submodule & s, const Tolerance & tol = {} );
Submodule range ( const ModuleMap & c, const Tolerance & tol = {} );

//
// the lift C of a right linear contraction c; computed against the lift
// dimension of the modules
//

// { x : ⟨cx, cx⟩ = ⟨x, x⟩ }: the elements whose lift has range inside the
// eigenspace of C*C at one. Throws NotContraction.
Submodule isometric_submodule ( const ModuleMap & c, const Tolerance & tol = {} );

struct ModulePartialIsometry
{
    bool                       is_partial_isometry = false;
    std::optional< ModuleMap > initial_projection;       // π_v when is_partial_isometry
    double                     residual  = 0;            // ‖V V* V − V‖_F
    double                     adjoint_residual = 0;     // distance of V* L_y from the source span
};

//
// partial isometry test: the lift satisfies V V* V = V and V* maps every
// target generator back into the source module. Throws NotContraction.
//
ModulePartialIsometry is_partial_isometry_mod ( const ModuleMap & v, const Tolerance & tol = {} );

// ⟨vx, vy⟩ = ⟨x, y⟩ on the source
bool is_isometry_mod ( const ModuleMap & v, const Tolerance & tol = {} );

// v restricts to a unitary from a submodule onto the whole target
bool is_coisometry_mod ( const ModuleMap & v, const Tolerance & tol = {} );

struct InvarianceCriterion
{
    bool   product_is_pi   = false;
    bool   range_invariant = false;   // π_v maps wD into wD
    double product_residual   = 0;
    double invariance_residual = 0;

    bool consistent () const { return product_is_pi == range_invariant; }
};

// throws NotPartialIsometry, TargetSourceMismatch
InvarianceCriterion product_invariance_criterion ( const ModuleMap & v, const ModuleMap & w,
                                                   const Tolerance & tol = {} );

struct Complement
{
    bool                       complemented = false;
    Submodule                  orthogonal;      // s⊥ = { y : ⟨x, y⟩ = 0 ∀ x ∈ s }
    std::optional< ModuleMap > projection;      // onto s, when complemented
};

Complement complement ( const Submodule & s, const Tolerance & tol = {} );

struct ContainedModulePI
{
    ModuleMap  v;          // c ∘ p_c
    ModuleMap  p_c;        // projection onto P_c
    Submodule  isometric;  // P_c
};

// throws NotContraction; NotComplemented is unreachable at finite dimension
ContainedModulePI contained_partial_isometry_mod ( const ModuleMap & c, const Tolerance & tol = {} );

// smallest eigenvalue of ⟨cx, cx⟩ − ⟨x, π x⟩; nonnegative when π is dominated by c*c
double domination_margin ( const ModuleMap & c, const ModuleMap & pi, const ComplexMatrix & x );

// max over generator pairs of ‖⟨c(1 − p)y, c p x⟩‖_F
double cross_term_residual ( const ModuleMap & c, const ModuleMap & p );

//
// v = (v restricted to π_v E) ∘ (π_v corestricted to π_v E)
//
struct Factorization
{
    ModuleMap  isometry;     // π_v E → F
    ModuleMap  coisometry;   // E → π_v E
};

// throws NotPartialIsometry
Factorization factor_partial_isometry ( const ModuleMap & v, const Tolerance & tol = {} );

}// namespace piso
