#include "piso/module.hpp"

#include <cmath>

namespace piso {

namespace {

// slack for structural membership tests (spans, closure, block structure)
double
structural_slack ( const Tolerance & tol, double scale )
{
    return tol.rank_cutoff() * std::max( 1.0, scale );
}

ComplexMatrix
vec_columns ( std::span< const ComplexMatrix > elements, std::size_t rows )
{
    ComplexMatrix  m( rows, elements.size() );

    for ( std::size_t j = 0; j < elements.size(); ++j )
        m.set_col( j, vec( elements[j] ) );
    return m;
}

std::vector< ComplexMatrix >
unvec_columns ( const ComplexMatrix & basis, std::size_t rows, std::size_t cols )
{
    std::vector< ComplexMatrix >  out;

    out.reserve( basis.cols() );
    for ( std::size_t k = 0; k < basis.cols(); ++k )
        out.push_back( unvec( basis.col( k ), rows, cols ) );
    return out;
}

double
max_norm ( std::span< const ComplexMatrix > elements )
{
    double  s = 0;

    for ( const auto & e : elements )
        s = std::max( s, frobenius_norm( e ) );
    return s;
}

void
require_same_algebra ( const HilbertModule & a, const HilbertModule & b )
{
    if ( ! ( a.algebra() == b.algebra() ) )
        throw ShapeMismatch( "modules over different algebras" );
}

void
require_contraction ( const ModuleMap & c, const Tolerance & tol )
{
    const auto  n = c.norm();

    if ( n > 1.0 + tol.eq )
        throw NotContraction( "module map norm exceeds 1 by " + sci( n - 1.0 ) );
}

// eigenspace tolerance for C*C when ‖C‖ ≤ 1 + tol.eq
Tolerance
gram_tolerance ( const Tolerance & tol )
{
    auto  t = tol;

    t.eq = std::min( 1e-3, 3.0 * tol.eq + 1e-14 );
    return t;
}

}// namespace anonymous

//////////////////////////////////////////////////////////////////////
//
// CStarAlgebra
//
//////////////////////////////////////////////////////////////////////

CStarAlgebra::CStarAlgebra ( std::vector< std::size_t > block_sizes )
    : blocks_( std::move( block_sizes ) )
{
    if ( blocks_.empty() )
        throw InvalidModule( "algebra: no blocks" );

    for ( auto b : blocks_ )
    {
        if ( b == 0 )
            throw InvalidModule( "algebra: block of size 0" );
        offsets_.push_back( dim_ );
        dim_ += b;
    }

    for ( std::size_t i = 0; i < blocks_.size(); ++i )
        for ( std::size_t j = 0; j < blocks_[i]; ++j )
            for ( std::size_t k = 0; k < blocks_[i]; ++k )
            {
                ComplexMatrix  e( dim_, dim_ );

                e( offsets_[i] + j, offsets_[i] + k ) = 1.0;
                basis_.push_back( std::move( e ) );
            }
}

double
CStarAlgebra::off_block_norm ( const ComplexMatrix & a ) const
{
    if ( a.rows() != dim_ || a.cols() != dim_ )
        throw ShapeMismatch( "algebra element of shape " + shape_string( a ) );

    std::vector< std::size_t >  block_of( dim_ );

    for ( std::size_t i = 0; i < blocks_.size(); ++i )
        for ( std::size_t j = 0; j < blocks_[i]; ++j )
            block_of[ offsets_[i] + j ] = i;

    double  s = 0;

    for ( std::size_t r = 0; r < dim_; ++r )
        for ( std::size_t c = 0; c < dim_; ++c )
            if ( block_of[r] != block_of[c] )
                s += std::norm( a( r, c ) );
    return std::sqrt( s );
}

bool
CStarAlgebra::contains ( const ComplexMatrix & a, double slack ) const
{
    return a.rows() == dim_ && a.cols() == dim_ && off_block_norm( a ) <= slack;
}

//////////////////////////////////////////////////////////////////////
//
// HilbertModule
//
//////////////////////////////////////////////////////////////////////

HilbertModule::HilbertModule ( CStarAlgebra algebra, std::size_t lift_dim, std::vector< ComplexMatrix > generators,
                               const Tolerance & tol )
    : algebra_( std::move( algebra ) ), lift_dim_( lift_dim ), generators_( std::move( generators ) )
{
    const auto  n = algebra_.dim();

    for ( const auto & g : generators_ )
        if ( g.rows() != lift_dim_ || g.cols() != n )
            throw InvalidModule( "module: generator of shape " + shape_string( g ) + ", expected "
                                 + std::to_string( lift_dim_ ) + "x" + std::to_string( n ) );

    const auto  gmat = vec_columns( generators_, lift_dim_ * n );

    span_ = column_span( gmat, tol );
    if ( span_.dim() != generators_.size() )
        throw InvalidModule( "module: generators are linearly dependent" );

    coord_map_ = pseudo_inverse( gmat, tol );

    const auto  slack = structural_slack( tol, max_norm( generators_ ) );

    for ( const auto & g : generators_ )
        for ( const auto & b : algebra_.basis() )
            if ( distance( g * b ) > slack )
                throw InvalidModule( "module: span not closed under right multiplication" );

    for ( const auto & x : generators_ )
        for ( const auto & y : generators_ )
            if ( algebra_.off_block_norm( piso::adjoint( x ) * y ) > slack * std::max( 1.0, max_norm( generators_ ) ) )
                throw InvalidModule( "module: inner product leaves the algebra" );
}

HilbertModule
HilbertModule::hilbert_space ( std::size_t dim )
{
    std::vector< ComplexMatrix >  gens;

    for ( std::size_t i = 0; i < dim; ++i )
    {
        ComplexMatrix  e( dim, 1 );

        e( i, 0 ) = 1.0;
        gens.push_back( std::move( e ) );
    }
    return HilbertModule( CStarAlgebra::scalars(), dim, std::move( gens ) );
}

HilbertModule
HilbertModule::algebra_module ( const CStarAlgebra & algebra )
{
    return HilbertModule( algebra, algebra.dim(), algebra.basis() );
}

std::vector< Complex >
HilbertModule::coordinates ( const ComplexMatrix & x ) const
{
    if ( x.rows() != lift_dim_ || x.cols() != algebra_.dim() )
        throw ShapeMismatch( "module element of shape " + shape_string( x ) );
    return vec( coord_map_ * ComplexMatrix::column( vec( x ) ) );
}

ComplexMatrix
HilbertModule::element ( std::span< const Complex > coords ) const
{
    if ( coords.size() != generators_.size() )
        throw ShapeMismatch( "module coordinates of length " + std::to_string( coords.size() ) );

    ComplexMatrix  x( lift_dim_, algebra_.dim() );

    for ( std::size_t j = 0; j < coords.size(); ++j )
        if ( coords[j] != Complex( 0 ) )
            x += coords[j] * generators_[j];
    return x;
}

double
HilbertModule::distance ( const ComplexMatrix & x ) const
{
    if ( x.rows() != lift_dim_ || x.cols() != algebra_.dim() )
        throw ShapeMismatch( "module element of shape " + shape_string( x ) );
    return distance_to( span_, vec( x ) );
}

Subspace
HilbertModule::lifted_space ( const Tolerance & tol ) const
{
    return column_span( hstack( generators_, lift_dim_ ), tol );
}

bool
HilbertModule::is_full ( const Tolerance & tol ) const
{
    // ⟨E, E⟩ spans block i iff some generator has nonzero block-i columns
    for ( std::size_t i = 0; i < algebra_.num_blocks(); ++i )
    {
        double  s = 0;

        for ( const auto & g : generators_ )
            s += frobenius_norm( g.cols_range( algebra_.block_offset( i ), algebra_.block_sizes()[i] ) );
        if ( s <= tol.rank_cutoff() )
            return false;
    }
    return true;
}

bool
HilbertModule::same_as ( const HilbertModule & other, double slack ) const
{
    return algebra_ == other.algebra_ && lift_dim_ == other.lift_dim_ && same_subspace( span_, other.span_, slack );
}

ComplexMatrix
module_inner ( const HilbertModule & e, const ComplexMatrix & x, const ComplexMatrix & y, const Tolerance & tol )
{
    const auto  n = e.algebra().dim();

    if ( x.rows() != e.lift_dim() || x.cols() != n || y.rows() != e.lift_dim() || y.cols() != n )
        throw ShapeMismatch( "module_inner: element shapes " + shape_string( x ) + ", " + shape_string( y ) );

    auto        p     = adjoint( x ) * y;
    const auto  slack = structural_slack( tol, frobenius_norm( x ) * frobenius_norm( y ) );

    if ( e.algebra().off_block_norm( p ) > slack )
        throw NotInAlgebra( "module_inner: ⟨x, y⟩ is not block diagonal" );
    return p;
}

Subspace
close_under_algebra ( const CStarAlgebra & algebra, std::size_t lift_dim, std::span< const ComplexMatrix > elements,
                      const Tolerance & tol )
{
    const auto  ambient = lift_dim * algebra.dim();
    auto        span    = column_span( vec_columns( elements, ambient ), tol );

    while ( true )
    {
        std::vector< ComplexMatrix >  cand;

        for ( const auto & x : unvec_columns( span.basis(), lift_dim, algebra.dim() ) )
        {
            cand.push_back( x );
            for ( const auto & b : algebra.basis() )
                cand.push_back( x * b );
        }

        auto  next = column_span( vec_columns( cand, ambient ), tol );

        if ( next.dim() == span.dim() )
            return next;
        span = std::move( next );
    }
}

//////////////////////////////////////////////////////////////////////
//
// ModuleMap
//
//////////////////////////////////////////////////////////////////////

ModuleMap::ModuleMap ( HilbertModule source, HilbertModule target, ComplexMatrix action, ComplexMatrix lift )
    : source_( std::move( source ) ), target_( std::move( target ) ), action_( std::move( action ) ), lift_( std::move( lift ) )
{}

ModuleMap
ModuleMap::from_action ( HilbertModule source, HilbertModule target, ComplexMatrix action, const Tolerance & tol )
{
    require_same_algebra( source, target );

    if ( action.rows() != target.dim() || action.cols() != source.dim() )
        throw ShapeMismatch( "module map: action of shape " + shape_string( action ) + ", expected "
                             + std::to_string( target.dim() ) + "x" + std::to_string( source.dim() ) );

    // C [L_x1 ... L_xd] = [L_cx1 ... L_cxd]
    std::vector< ComplexMatrix >  images;

    for ( std::size_t j = 0; j < source.dim(); ++j )
        images.push_back( target.element( action.col( j ) ) );

    const auto  x = hstack( source.generators(), source.lift_dim() );
    const auto  y = hstack( images, target.lift_dim() );
    auto        c = y * pseudo_inverse( x, tol );

    const auto  slack = structural_slack( tol, frobenius_norm( y ) );

    if ( frobenius_distance( c * x, y ) > slack )
        throw IllFormedMap( "module map: no well-defined lift (residual "
                            + sci( frobenius_distance( c * x, y ) ) + ")" );

    ModuleMap  m( std::move( source ), std::move( target ), std::move( action ), std::move( c ) );

    if ( m.right_linearity_residual() > slack )
        throw IllFormedMap( "module map: not right linear" );
    return m;
}

ModuleMap
ModuleMap::from_lift ( HilbertModule source, HilbertModule target, const ComplexMatrix & lift, const Tolerance & tol )
{
    require_same_algebra( source, target );

    if ( lift.rows() != target.lift_dim() || lift.cols() != source.lift_dim() )
        throw ShapeMismatch( "module map: lift of shape " + shape_string( lift ) );

    ComplexMatrix  action( target.dim(), source.dim() );

    for ( std::size_t j = 0; j < source.dim(); ++j )
    {
        const auto  img   = lift * source.generator( j );
        const auto  slack = structural_slack( tol, frobenius_norm( img ) );

        if ( target.distance( img ) > slack )
            throw IllFormedMap( "module map: lift leaves the target module" );
        action.set_col( j, target.coordinates( img ) );
    }

    auto  c = lift * orthogonal_projection( source.lifted_space( tol ) );

    return ModuleMap( std::move( source ), std::move( target ), std::move( action ), std::move( c ) );
}

ModuleMap
ModuleMap::identity ( const HilbertModule & e )
{
    return ModuleMap( e, e, ComplexMatrix::identity( e.dim() ), orthogonal_projection( e.lifted_space() ) );
}

ModuleMap
ModuleMap::zero ( const HilbertModule & source, const HilbertModule & target )
{
    require_same_algebra( source, target );
    return ModuleMap( source, target, ComplexMatrix( target.dim(), source.dim() ),
                      ComplexMatrix( target.lift_dim(), source.lift_dim() ) );
}

double
ModuleMap::right_linearity_residual () const
{
    double  worst = 0;

    for ( std::size_t j = 0; j < source_.dim(); ++j )
    {
        const auto  cx = target_.element( action_.col( j ) );

        for ( const auto & b : source_.algebra().basis() )
        {
            const auto  beta = source_.coordinates( source_.generator( j ) * b );
            const auto  lhs  = target_.element( vec( action_ * ComplexMatrix::column( beta ) ) );

            worst = std::max( worst, frobenius_distance( lhs, cx * b ) );
        }
    }
    return worst;
}

ComplexMatrix
lift ( const ModuleMap & c )
{
    return c.lift();
}

ModuleMap
compose ( const ModuleMap & v, const ModuleMap & w, const Tolerance & tol )
{
    if ( ! w.target().same_as( v.source(), structural_slack( tol, 1.0 ) ) )
        throw TargetSourceMismatch( "compose: target of w is not the source of v" );
    return ModuleMap::from_lift( w.source(), v.target(), v.lift() * w.lift(), tol );
}

ModuleMap
scale ( Complex s, const ModuleMap & c, const Tolerance & tol )
{
    return ModuleMap::from_action( c.source(), c.target(), s * c.action(), tol );
}

ModuleMap
adjoint ( const ModuleMap & c, const Tolerance & tol )
{
    return ModuleMap::from_lift( c.target(), c.source(), adjoint( c.lift() ), tol );
}

//////////////////////////////////////////////////////////////////////
//
// Submodule
//
//////////////////////////////////////////////////////////////////////

Submodule::Submodule ( HilbertModule parent, Subspace span, const Tolerance & tol )
    : parent_( std::move( parent ) ), span_( std::move( span ) )
{
    if ( span_.ambient_dim() != parent_.lift_dim() * parent_.algebra().dim() )
        throw InvalidModule( "submodule: ambient dimension mismatch" );

    const auto  slack = structural_slack( tol, 1.0 );

    if ( inclusion_residual( span_, parent_.span() ) > slack )
        throw InvalidModule( "submodule: not contained in the parent" );
    if ( closure_residual() > slack )
        throw InvalidModule( "submodule: not closed under right multiplication" );
}

Submodule
Submodule::zero ( const HilbertModule & parent )
{
    return Submodule( parent, Subspace( parent.lift_dim() * parent.algebra().dim() ) );
}

Submodule
Submodule::full ( const HilbertModule & parent )
{
    return Submodule( parent, parent.span() );
}

Submodule
Submodule::generated_by ( const HilbertModule & parent, std::span< const ComplexMatrix > elements, const Tolerance & tol )
{
    if ( elements.empty() )
        return zero( parent );
    return Submodule( parent, close_under_algebra( parent.algebra(), parent.lift_dim(), elements, tol ), tol );
}

std::vector< ComplexMatrix >
Submodule::elements () const
{
    return unvec_columns( span_.basis(), parent_.lift_dim(), parent_.algebra().dim() );
}

double
Submodule::distance ( const ComplexMatrix & x ) const
{
    return distance_to( span_, vec( x ) );
}

double
Submodule::closure_residual () const
{
    double  worst = 0;

    for ( const auto & x : elements() )
        for ( const auto & b : parent_.algebra().basis() )
            worst = std::max( worst, distance( x * b ) );
    return worst;
}

HilbertModule
Submodule::as_module ( const Tolerance & tol ) const
{
    return HilbertModule( parent_.algebra(), parent_.lift_dim(), elements(), tol );
}

double
inclusion_residual ( const Submodule & inner, const Submodule & outer )
{
    return inclusion_residual( inner.span(), outer.span() );
}

bool
includes ( const Submodule & outer, const Submodule & inner, double slack )
{
    return includes( outer.span(), inner.span(), slack );
}

bool
same_submodule ( const Submodule & a, const Submodule & b, double slack )
{
    return same_subspace( a.span(), b.span(), slack );
}

Submodule
image ( const ModuleMap & c, const Submodule & s, const Tolerance & tol )
{
    std::vector< ComplexMatrix >  imgs;

    for ( const auto & x : s.elements() )
        imgs.push_back( c.apply( x ) );

    if ( imgs.empty() )
        return Submodule::zero( c.target() );

    const auto  ambient = c.target().lift_dim() * c.target().algebra().dim();

    return Submodule( c.target(), column_span( vec_columns( imgs, ambient ), tol ), tol );
}

Submodule
range ( const ModuleMap & c, const Tolerance & tol )
{
    return image( c, Submodule::full( c.source() ), tol );
}

//////////////////////////////////////////////////////////////////////
//
// maximal isometric submodule and partial isometries
//
//////////////////////////////////////////////////////////////////////

Submodule
isometric_submodule ( const ModuleMap & c, const Tolerance & tol )
{
    require_contraction( c, tol );

    const auto &  e   = c.source();
    const auto    m   = e.lift_dim();
    const auto    n   = e.algebra().dim();
    const auto    s   = eigenspace_at_one( adjoint( c.lift() ) * c.lift(), gram_tolerance( tol ) );
    const auto    off = ComplexMatrix::identity( m ) - orthogonal_projection( s );
    const auto &  q   = e.span().basis();

    // x = Σ α_k q_k lies in P_c iff (1 − P_S) L_x = 0
    ComplexMatrix  constraint( m * n, q.cols() );

    for ( std::size_t k = 0; k < q.cols(); ++k )
        constraint.set_col( k, vec( off * unvec( q.col( k ), m, n ) ) );

    const auto  coeffs = null_space( constraint, tol );

    return Submodule( e, Subspace::from_orthonormal( q * coeffs.basis(), { .ortho = 1e-8 } ), tol );
}

ModulePartialIsometry
is_partial_isometry_mod ( const ModuleMap & v, const Tolerance & tol )
{
    require_contraction( v, tol );

    const auto &  V  = v.lift();
    const auto    Vs = adjoint( V );

    ModulePartialIsometry  r;

    r.residual = frobenius_distance( V * Vs * V, V );

    // adjointability witness: V* L_y ∈ E for every target generator y
    for ( const auto & y : v.target().generators() )
        r.adjoint_residual = std::max( r.adjoint_residual, v.source().distance( Vs * y ) / std::max( 1.0, frobenius_norm( y ) ) );

    r.is_partial_isometry = r.residual <= tol.eq && r.adjoint_residual <= structural_slack( tol, 1.0 );

    if ( ! r.is_partial_isometry )
        return r;

    auto  pi = ModuleMap::from_lift( v.source(), v.source(), Vs * V, tol );

    if ( frobenius_distance( V * pi.lift(), V ) > structural_slack( tol, 1.0 ) )
        throw Error( "is_partial_isometry_mod: v ∘ π_v ≠ v" );
    if ( ! same_subspace( null_space( pi.action(), tol ), null_space( v.action(), tol ), 1e-6 ) )
        throw Error( "is_partial_isometry_mod: kernel of π_v differs from kernel of v" );

    r.initial_projection = std::move( pi );
    return r;
}

bool
is_isometry_mod ( const ModuleMap & v, const Tolerance & tol )
{
    const auto  p = orthogonal_projection( v.source().lifted_space( tol ) );

    return frobenius_distance( adjoint( v.lift() ) * v.lift(), p ) <= tol.eq;
}

bool
is_coisometry_mod ( const ModuleMap & v, const Tolerance & tol )
{
    const auto  p = orthogonal_projection( v.target().lifted_space( tol ) );

    return frobenius_distance( v.lift() * adjoint( v.lift() ), p ) <= tol.eq;
}

InvarianceCriterion
product_invariance_criterion ( const ModuleMap & v, const ModuleMap & w, const Tolerance & tol )
{
    if ( ! w.target().same_as( v.source(), structural_slack( tol, 1.0 ) ) )
        throw TargetSourceMismatch( "invariance: target of w is not the source of v" );

    const auto  pv = is_partial_isometry_mod( v, tol );
    const auto  pw = is_partial_isometry_mod( w, tol );

    if ( ! pv.is_partial_isometry )
        throw NotPartialIsometry( "invariance: v is not a partial isometry" );
    if ( ! pw.is_partial_isometry )
        throw NotPartialIsometry( "invariance: w is not a partial isometry" );

    InvarianceCriterion  ic;

    const auto  product = is_partial_isometry_mod( compose( v, w, tol ), tol );

    ic.product_is_pi    = product.is_partial_isometry;
    ic.product_residual = product.residual;

    // wD ⊂ E as a scalar subspace, and π_v applied to its spanning set
    const auto &  e       = v.source();
    const auto    ambient = e.lift_dim() * e.algebra().dim();

    std::vector< ComplexMatrix >  wd;

    for ( const auto & x : w.source().generators() )
        wd.push_back( w.apply( x ) );

    const auto  wd_span = column_span( vec_columns( wd, ambient ), tol );
    const auto  pi      = pv.initial_projection->lift();

    for ( const auto & y : wd )
        ic.invariance_residual = std::max( ic.invariance_residual, distance_to( wd_span, vec( pi * y ) ) );

    ic.range_invariant = ic.invariance_residual <= tol.eq * std::max( 1.0, max_norm( w.source().generators() ) );
    return ic;
}

Complement
complement ( const Submodule & s, const Tolerance & tol )
{
    const auto &  e  = s.parent();
    const auto    m  = e.lift_dim();
    const auto    n  = e.algebra().dim();
    const auto &  q  = e.span().basis();
    const auto    xs = s.elements();

    // y = Σ α_j q_j is orthogonal to s iff L_x* L_y = 0 for every basis element x of s
    ComplexMatrix  constraint( xs.size() * n * n, q.cols() );

    for ( std::size_t j = 0; j < q.cols(); ++j )
    {
        const auto  y = unvec( q.col( j ), m, n );

        for ( std::size_t k = 0; k < xs.size(); ++k )
        {
            const auto  p = adjoint( xs[k] ) * y;

            for ( std::size_t t = 0; t < n * n; ++t )
                constraint( k * n * n + t, j ) = p.entries()[t];
        }
    }

    const auto  coeffs = xs.empty() ? Subspace::full( q.cols() ) : null_space( constraint, tol );
    Submodule   perp( e, Subspace::from_orthonormal( q * coeffs.basis(), { .ortho = 1e-8 } ), tol );

    Complement  c{ .complemented = s.dim() + perp.dim() == e.dim(), .orthogonal = perp, .projection = std::nullopt };

    if ( ! c.complemented )
        return c;

    // E = s ⊕ s⊥ with s⊥ the vec-orthogonal complement of s inside E, so the
    // module projection is the vec-orthogonal projection onto s
    const auto     ps = orthogonal_projection( s.span() );
    ComplexMatrix  action( e.dim(), e.dim() );

    for ( std::size_t j = 0; j < e.dim(); ++j )
    {
        const auto  px = unvec( vec( ps * ComplexMatrix::column( vec( e.generator( j ) ) ) ), m, n );

        action.set_col( j, e.coordinates( px ) );
    }

    auto  p = ModuleMap::from_action( e, e, std::move( action ), tol );

    const auto  slack = structural_slack( tol, max_norm( e.generators() ) );

    if ( frobenius_distance( p.lift() * p.lift(), p.lift() ) > slack )
        throw Error( "complement: projection is not idempotent" );

    for ( const auto & x : e.generators() )
        for ( const auto & y : e.generators() )
        {
            const auto  px = p.apply( x );
            const auto  py = p.apply( y );

            if ( frobenius_distance( adjoint( px ) * py, adjoint( x ) * py ) > slack * std::max( 1.0, max_norm( e.generators() ) ) )
                throw Error( "complement: ⟨px, py⟩ ≠ ⟨x, py⟩" );
        }

    c.projection = std::move( p );
    return c;
}

ContainedModulePI
contained_partial_isometry_mod ( const ModuleMap & c, const Tolerance & tol )
{
    auto  pc   = isometric_submodule( c, tol );
    auto  comp = complement( pc, tol );

    if ( ! comp.complemented )
        throw NotComplemented( "contained partial isometry: isometric submodule is not complemented" );

    auto  v = compose( c, *comp.projection, tol );

    if ( ! is_partial_isometry_mod( v, tol ).is_partial_isometry )
        throw Error( "contained partial isometry: c ∘ p_c failed the partial isometry test" );

    return { std::move( v ), std::move( *comp.projection ), std::move( pc ) };
}

double
domination_margin ( const ModuleMap & c, const ModuleMap & pi, const ComplexMatrix & x )
{
    const auto  cx = c.apply( x );
    const auto  a  = adjoint( cx ) * cx - adjoint( x ) * pi.apply( x );
    const auto  es = hermitian_eigensystem( 0.5 * ( a + adjoint( a ) ), { .eq = 1e-3 } );

    return es.values.empty() ? 0.0 : es.values.back();
}

double
cross_term_residual ( const ModuleMap & c, const ModuleMap & p )
{
    double  worst = 0;

    for ( const auto & x : c.source().generators() )
        for ( const auto & y : c.source().generators() )
        {
            const auto  u = c.apply( y - p.apply( y ) );
            const auto  w = c.apply( p.apply( x ) );

            worst = std::max( worst, frobenius_norm( adjoint( u ) * w ) );
        }
    return worst;
}

Factorization
factor_partial_isometry ( const ModuleMap & v, const Tolerance & tol )
{
    const auto  pv = is_partial_isometry_mod( v, tol );

    if ( ! pv.is_partial_isometry )
        throw NotPartialIsometry( "factor: not a partial isometry" );

    const auto &  pi  = *pv.initial_projection;
    auto          sub = range( pi, tol ).as_module( tol );

    auto  iso   = ModuleMap::from_lift( sub, v.target(), v.lift(), tol );
    auto  coiso = ModuleMap::from_lift( v.source(), std::move( sub ), pi.lift(), tol );

    return { std::move( iso ), std::move( coiso ) };
}

}// namespace piso
