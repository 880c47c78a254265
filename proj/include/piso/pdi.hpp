#pragma once

#include "piso/module.hpp"

namespace piso {

//
// (map, domain): a right linear map that preserves inner products on a
// closed submodule of its source
//
struct PartiallyDefinedIsometry
{
    ModuleMap  map;
    Submodule  domain;

    // largest ‖⟨vx, vy⟩ − ⟨x, y⟩‖_F over domain basis pairs
    double isometry_residual () const;

    // throws InvalidModule if the domain does not sit in map.source() or the
    // map fails to be isometric on it
    void validate ( const Tolerance & tol = {} ) const;
};

using PDI = PartiallyDefinedIsometry;

// (identity, full module)
PDI identity_pdi ( const HilbertModule & e );

//
// (v ∘ w, { x ∈ D_w : w x ∈ D_v }); the domain is the kernel of
// (1 − P_{D_v}) ∘ w on D_w in vec coordinates. Throws TargetSourceMismatch.
//
PDI compose_pdi ( const PDI & v, const PDI & w, const Tolerance & tol = {} );

// (c, P_c); always exists. Throws NotContraction.
PDI contained_pdi ( const ModuleMap & c, const Tolerance & tol = {} );

struct PdiComparison
{
    bool   equal = false;
    double domain_residual = 0;   // mutual inclusion residual of the domains
    double map_residual = 0;      // largest ‖(a − b) x‖ over a domain basis
};

// equal domains as submodules and equal restrictions on them
PdiComparison compare_pdi ( const PDI & a, const PDI & b, double slack );

struct PropositionCheck
{
    bool          holds = false;
    PDI           contained;   // (vw, P_vw)
    PDI           composed;    // (v, π_v E) ∘ (w, π_w D)
    PdiComparison comparison;
};

//
// compares the partially defined isometry contained in vw with the
// composition of (v, π_v E) and (w, π_w D). Throws NotPartialIsometry.
//
PropositionCheck final_proposition_check ( const ModuleMap & v, const ModuleMap & w, const Tolerance & tol = {} );

}// namespace piso
