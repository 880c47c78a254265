#pragma once

#include <cstdint>
#include <random>

#include "piso/module.hpp"
#include "piso/pdf.hpp"

//
// Seeded generators for the property suites. Every generator draws only
// from the engine it is handed, so a trial is reproducible from its seed.
//

namespace piso::random {

using Engine = std::mt19937_64;

// per-trial seed from (master seed, trial index); splitmix64 finalizer
std::uint64_t derive_seed ( std::uint64_t master, std::uint64_t index );

std::size_t uniform_index ( Engine & rng, std::size_t lo, std::size_t hi );   // [lo, hi]
double      uniform_real ( Engine & rng, double lo, double hi );
bool        coin ( Engine & rng, double p );

// i.i.d. standard complex Gaussian entries
ComplexMatrix gaussian ( Engine & rng, std::size_t rows, std::size_t cols );

// Haar-like unitary from Gram-Schmidt on a Gaussian matrix
ComplexMatrix unitary ( Engine & rng, std::size_t n );

// rows × k matrix with orthonormal columns
ComplexMatrix isometry ( Engine & rng, std::size_t rows, std::size_t k );

// SVD of a Gaussian matrix with the top `rank` singular values set to 1 and
// the rest to 0
ComplexMatrix partial_isometry ( Engine & rng, std::size_t rows, std::size_t cols, std::size_t rank );

// rank drawn uniformly from [0, min(rows, cols)]
ComplexMatrix partial_isometry ( Engine & rng, std::size_t rows, std::size_t cols );

// rows × cols diagonal 0/1 matrix with `rank` ones at random positions
ComplexMatrix zero_one_diagonal ( Engine & rng, std::size_t rows, std::size_t cols, std::size_t rank );

// pair (v : mid → rows, w : cols → mid) with commuting v*v and ww*: 0/1
// diagonals conjugated by one shared unitary on the middle space
std::pair< ComplexMatrix, ComplexMatrix >
commuting_pair ( Engine & rng, std::size_t rows, std::size_t mid, std::size_t cols );

//
// U diag(σ) V* with `ones` singular values equal to 1 and the others drawn
// from [0, 1 − gap]
//
ComplexMatrix contraction ( Engine & rng, std::size_t rows, std::size_t cols, std::size_t ones, double gap = 1e-3 );

// orthogonal projection onto a random rank-k subspace of the span of
// `within` (columns orthonormal)
ComplexMatrix subprojection ( Engine & rng, const ComplexMatrix & within, std::size_t k );

// exp(iεH) for a random Hermitian H of unit Frobenius norm
ComplexMatrix unitary_near_identity ( Engine & rng, std::size_t n, double eps );

// random injective partial function between label sets of the given sizes
PartialFn partial_function ( Engine & rng, const FiniteSet & source, const FiniteSet & target );

//
// modules
//

// 1..max_blocks blocks of sizes 1..max_block
CStarAlgebra algebra ( Engine & rng, std::size_t max_blocks, std::size_t max_block );

//
// random module over `algebra` with lift dimension ≤ max_lift: mutually
// orthogonal range spaces K_i ⊂ C^m per block, random elements with block-i
// columns in K_i, closed under right multiplication; generators are a
// linearly independent subset of the closure
//
HilbertModule module ( Engine & rng, const CStarAlgebra & algebra, std::size_t max_lift );

// module with prescribed range dimensions k_i inside C^lift_dim
HilbertModule module_with_ranges ( Engine & rng, const CStarAlgebra & algebra, std::size_t lift_dim,
                                   const std::vector< std::size_t > & ranks );

// orthonormal basis of the block-i range space K_i of a module
ComplexMatrix block_range ( const HilbertModule & e, std::size_t block );

//
// right linear maps, assembled block by block on the range spaces
//
// isometry and coisometry need k_i^E ≤ k_i^F (resp. ≥) in every block;
// throws InvalidValue otherwise
enum class MapKind { partial_isometry, contraction, isometry, coisometry };

ModuleMap module_map ( Engine & rng, const HilbertModule & source, const HilbertModule & target, MapKind kind );

// (v : E → F, w : D → E) partial isometries with commuting v*v, ww* per block
std::pair< ModuleMap, ModuleMap >
commuting_module_pair ( Engine & rng, const HilbertModule & d, const HilbertModule & e, const HilbertModule & f );

// random element of the module's scalar span
ComplexMatrix element ( Engine & rng, const HilbertModule & e );

}// namespace piso::random
