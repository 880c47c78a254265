#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piso/partial_isometry.hpp"

namespace piso {

//
// ordered list of distinct labels; the basis index of a label is its position
//
class FiniteSet
{
public:
    FiniteSet () = default;
    explicit FiniteSet ( std::vector< std::string > labels );

    std::size_t size () const noexcept { return labels_.size(); }
    const std::vector< std::string > & labels () const noexcept { return labels_; }

    std::optional< std::size_t > index_of ( const std::string & label ) const;
    bool contains ( const std::string & label ) const { return index_of( label ).has_value(); }

    friend bool operator == ( const FiniteSet & a, const FiniteSet & b ) { return a.labels_ == b.labels_; }

private:
    std::vector< std::string >            labels_;
    std::map< std::string, std::size_t >  index_;
};

//
// injective partially defined function f : source ⊃ D_f → target
//
class PartialFn
{
public:
    // throws InvalidValue for unknown labels or a non-injective mapping
    PartialFn ( FiniteSet source, FiniteSet target, std::map< std::string, std::string > mapping );

    static PartialFn identity ( const FiniteSet & s );

    const FiniteSet & source () const noexcept { return source_; }
    const FiniteSet & target () const noexcept { return target_; }
    const std::map< std::string, std::string > & mapping () const noexcept { return mapping_; }

    bool                         defined_at ( const std::string & b ) const { return mapping_.contains( b ); }
    std::optional< std::string > operator () ( const std::string & b ) const;

    bool is_total () const { return mapping_.size() == source_.size(); }
    bool is_surjective () const { return mapping_.size() == target_.size(); }

    friend bool operator == ( const PartialFn &, const PartialFn & ) = default;

private:
    FiniteSet                             source_;
    FiniteSet                             target_;
    std::map< std::string, std::string >  mapping_;
};

//
// f ∘ g on the maximal domain { c ∈ D_g : g(c) ∈ D_f }; throws
// TargetSourceMismatch unless g.target() == f.source()
//
PartialFn compose_pdf ( const PartialFn & f, const PartialFn & g );

// |target| × |source| 0/1 matrix, e_b ↦ e_{f(b)} on D_f and 0 elsewhere
ComplexMatrix to_partial_isometry ( const PartialFn & f );

// from the combinatorics of f, cross-checked against classify(v_f)
OperatorClass classify_pdf ( const PartialFn & f );

// every injective partial function source → target, in a fixed order
std::vector< PartialFn > all_injective_partial_functions ( const FiniteSet & source, const FiniteSet & target );

// FiniteSet {prefix0, prefix1, ...}
FiniteSet make_labels ( const std::string & prefix, std::size_t n );

}// namespace piso
