#include "piso/pdf.hpp"

#include <functional>
#include <set>

namespace piso {

FiniteSet::FiniteSet ( std::vector< std::string > labels )
    : labels_( std::move( labels ) )
{
    for ( std::size_t i = 0; i < labels_.size(); ++i )
        if ( ! index_.emplace( labels_[i], i ).second )
            throw InvalidValue( "finite set: duplicate label '" + labels_[i] + "'" );
}

std::optional< std::size_t >
FiniteSet::index_of ( const std::string & label ) const
{
    if ( auto it = index_.find( label ); it != index_.end() )
        return it->second;
    return std::nullopt;
}

PartialFn::PartialFn ( FiniteSet source, FiniteSet target, std::map< std::string, std::string > mapping )
    : source_( std::move( source ) ), target_( std::move( target ) ), mapping_( std::move( mapping ) )
{
    std::set< std::string >  seen;

    for ( const auto & [ b, a ] : mapping_ )
    {
        if ( ! source_.contains( b ) )
            throw InvalidValue( "partial function: '" + b + "' is not a source label" );
        if ( ! target_.contains( a ) )
            throw InvalidValue( "partial function: '" + a + "' is not a target label" );
        if ( ! seen.insert( a ).second )
            throw InvalidValue( "partial function: not injective, '" + a + "' is hit twice" );
    }
}

PartialFn
PartialFn::identity ( const FiniteSet & s )
{
    std::map< std::string, std::string >  m;

    for ( const auto & l : s.labels() )
        m.emplace( l, l );
    return { s, s, std::move( m ) };
}

std::optional< std::string >
PartialFn::operator () ( const std::string & b ) const
{
    if ( auto it = mapping_.find( b ); it != mapping_.end() )
        return it->second;
    return std::nullopt;
}

PartialFn
compose_pdf ( const PartialFn & f, const PartialFn & g )
{
    if ( ! ( g.target() == f.source() ) )
        throw TargetSourceMismatch( "compose_pdf: target of g differs from source of f" );

    std::map< std::string, std::string >  m;

    for ( const auto & [ c, b ] : g.mapping() )
        if ( auto a = f( b ) )
            m.emplace( c, *a );

    return { g.source(), f.target(), std::move( m ) };
}

ComplexMatrix
to_partial_isometry ( const PartialFn & f )
{
    ComplexMatrix  v( f.target().size(), f.source().size() );

    for ( const auto & [ b, a ] : f.mapping() )
        v( *f.target().index_of( a ), *f.source().index_of( b ) ) = 1.0;
    return v;
}

OperatorClass
classify_pdf ( const PartialFn & f )
{
    OperatorClass  c;

    c.is_contraction      = true;
    c.is_partial_isometry = true;
    c.is_isometry         = f.is_total();
    c.is_coisometry       = f.is_surjective();
    c.is_unitary          = c.is_isometry && c.is_coisometry;

    // v_f is a projection iff f maps every b ∈ D_f to the label with b's index
    c.is_projection = f.source().size() == f.target().size();
    for ( const auto & [ b, a ] : f.mapping() )
        c.is_projection = c.is_projection && f.source().index_of( b ) == f.target().index_of( a );

    const auto  numeric = classify( to_partial_isometry( f ), { .eq = 0.0 } );

    if ( ! ( numeric == c ) )
        throw Error( "classify_pdf: combinatorial and matrix classification disagree" );
    return c;
}

std::vector< PartialFn >
all_injective_partial_functions ( const FiniteSet & source, const FiniteSet & target )
{
    std::vector< PartialFn >              out;
    std::map< std::string, std::string >  m;
    std::vector< bool >                   used( target.size(), false );

    // each source label maps to "undefined" or to an unused target label
    std::function< void ( std::size_t ) >  rec = [&] ( std::size_t i )
    {
        if ( i == source.size() )
        {
            out.emplace_back( source, target, m );
            return;
        }

        rec( i + 1 );

        for ( std::size_t a = 0; a < target.size(); ++a )
        {
            if ( used[a] )
                continue;
            used[a] = true;
            m[ source.labels()[i] ] = target.labels()[a];
            rec( i + 1 );
            m.erase( source.labels()[i] );
            used[a] = false;
        }
    };

    rec( 0 );
    return out;
}

FiniteSet
make_labels ( const std::string & prefix, std::size_t n )
{
    std::vector< std::string >  l;

    for ( std::size_t i = 0; i < n; ++i )
        l.push_back( prefix + std::to_string( i ) );
    return FiniteSet( std::move( l ) );
}

}// namespace piso
