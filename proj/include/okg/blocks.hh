#ifndef OKG_BLOCKS_HH
#define OKG_BLOCKS_HH

#include "okg/bump.hh"
#include "okg/grid.hh"

/*
 Dyadic block operators on spectra. Block 0 is the low-frequency psi cutoff,
 block j >= 1 multiplies by phi_j. Over j = 0..j_max(grid) the multipliers sum
 to 1 at every lattice frequency, so the blocks reconstruct the input exactly;
 blocks with |j-k| >= 2 (j,k >= 1) have disjoint supports and annihilate each
 other. All blocks are real diagonal multipliers, hence self-adjoint and
 mutually commuting.
*/

namespace okg {

// Multiplier value of block j at lattice frequency k.
double block_multiplier(int j, const std::array<int, 3>& k, const GridSpec& g);

Spectrum block(const Spectrum& F, int j);

// All blocks 0..j_max at once (one pass over the lattice).
std::vector<Spectrum> block_decomposition(const Spectrum& F);

// Discrete L1 norm of the convolution kernel of a multiplier given by its
// samples on the spectral lattice: (L/n)^d sum_x |(1/L^d) sum_k m_k e^{i xi_k x}|.
// An upper-bound surrogate for the L^p-multiplier norm; the identity multiplier
// gives exactly 1.
double kernel_l1_estimate(const CArray& m, const GridSpec& g);

}  // namespace okg

#endif
