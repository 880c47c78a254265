#include "piso/pdi.hpp"

#include <cmath>

namespace piso {

double
PartiallyDefinedIsometry::isometry_residual () const
{
    const auto  xs    = domain.elements();
    double      worst = 0;

    for ( const auto & x : xs )
        for ( const auto & y : xs )
        {
            const auto  vx = map.apply( x );
            const auto  vy = map.apply( y );

            worst = std::max( worst, frobenius_distance( adjoint( vx ) * vy, adjoint( x ) * y ) );
        }
    return worst;
}

void
PartiallyDefinedIsometry::validate ( const Tolerance & tol ) const
{
    if ( ! domain.parent().same_as( map.source(), tol.rank_cutoff() ) )
        throw InvalidModule( "pdi: domain is not a submodule of the map's source" );
    if ( isometry_residual() > 10 * tol.eq + 1e-12 )
        throw InvalidModule( "pdi: map is not isometric on the domain (residual "
                             + sci( isometry_residual() ) + ")" );
}

PDI
identity_pdi ( const HilbertModule & e )
{
    return { ModuleMap::identity( e ), Submodule::full( e ) };
}

PDI
compose_pdi ( const PDI & v, const PDI & w, const Tolerance & tol )
{
    if ( ! w.map.target().same_as( v.map.source(), tol.rank_cutoff() ) )
        throw TargetSourceMismatch( "compose_pdi: target of w is not the source of v" );

    const auto &  d  = w.map.source();
    const auto    m  = d.lift_dim();
    const auto    n  = d.algebra().dim();
    const auto &  e  = v.map.source();
    const auto    me = e.lift_dim();
    const auto &  qw = w.domain.span().basis();

    // x = Σ α_k q_k ∈ D_w with (1 − P_{D_v}) vec(W x) = 0
    const auto     off = ComplexMatrix::identity( me * n ) - orthogonal_projection( v.domain.span() );
    ComplexMatrix  images( me * n, qw.cols() );

    for ( std::size_t k = 0; k < qw.cols(); ++k )
        images.set_col( k, vec( w.map.apply( unvec( qw.col( k ), m, n ) ) ) );

    const auto  coeffs = null_space( off * images, tol );
    Submodule   dom( d, Subspace::from_orthonormal( qw * coeffs.basis(), { .ortho = 1e-8 } ), tol );

    // membership cross-check: w maps the new domain into D_v
    const auto  slack = 10 * tol.rank_cutoff() * std::max( 1.0, frobenius_norm( images ) );

    for ( const auto & x : dom.elements() )
        if ( v.domain.distance( w.map.apply( x ) ) > slack )
            throw Error( "compose_pdi: preimage basis element leaves D_v" );

    PDI  r{ compose( v.map, w.map, tol ), std::move( dom ) };

    r.validate( tol );
    return r;
}

PDI
contained_pdi ( const ModuleMap & c, const Tolerance & tol )
{
    PDI  r{ c, isometric_submodule( c, tol ) };

    r.validate( tol );
    return r;
}

PdiComparison
compare_pdi ( const PDI & a, const PDI & b, double slack )
{
    PdiComparison  cmp;

    cmp.domain_residual = std::max( inclusion_residual( a.domain, b.domain ), inclusion_residual( b.domain, a.domain ) );

    for ( const auto & x : a.domain.elements() )
        cmp.map_residual = std::max( cmp.map_residual, frobenius_distance( a.map.apply( x ), b.map.apply( x ) ) );

    cmp.equal = a.domain.dim() == b.domain.dim() && cmp.domain_residual <= slack && cmp.map_residual <= slack;
    return cmp;
}

PropositionCheck
final_proposition_check ( const ModuleMap & v, const ModuleMap & w, const Tolerance & tol )
{
    const auto  pv = is_partial_isometry_mod( v, tol );
    const auto  pw = is_partial_isometry_mod( w, tol );

    if ( ! pv.is_partial_isometry )
        throw NotPartialIsometry( "proposition: v is not a partial isometry" );
    if ( ! pw.is_partial_isometry )
        throw NotPartialIsometry( "proposition: w is not a partial isometry" );

    PDI  vd{ v, range( *pv.initial_projection, tol ) };
    PDI  wd{ w, range( *pw.initial_projection, tol ) };

    PropositionCheck  pc{ .holds = false,
                          .contained = contained_pdi( compose( v, w, tol ), tol ),
                          .composed = compose_pdi( vd, wd, tol ),
                          .comparison = {} };

    pc.comparison = compare_pdi( pc.contained, pc.composed, std::max( 1e-8, tol.rank_cutoff() ) );
    pc.holds      = pc.comparison.equal;
    return pc;
}

}// namespace piso
