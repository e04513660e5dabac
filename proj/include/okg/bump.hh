#ifndef OKG_BUMP_HH
#define OKG_BUMP_HH

#include "okg/grid.hh"

/*
 Smooth dyadic cutoffs built from the standard C-infinity step

   eta(t)   = exp(-1/t) for t > 0, else 0
   theta(t) = eta(t) / (eta(t) + eta(1-t))      (0 for t <= 0, 1 for t >= 1)

 psi(r) = theta((5/4 - r)/(1/4)) as a function of the l1 radius r = |xi|_1:
 identically 1 for r <= 1, identically 0 for r >= 5/4, monotone in between.

 phi(r) = psi(r) - psi(2r) and phi_j(r) = phi(2^{-j} r), supported in
 2^{j-1} < r < 5 * 2^{j-2}, so blocks j and k overlap only for |j-k| <= 1.
 psi + sum_{j>=1} phi_j telescopes to psi(2^{-J} r) = 1 once 2^J >= r.
*/

namespace okg {

double smooth_step(double t);           // theta above
double psi_profile(double r);           // r = l1 radius
double phi_profile(double r);           // psi(r) - psi(2r)
double phi_j_profile(int j, double r);  // phi(2^{-j} r)

double psi(const std::array<int, 3>& k, const GridSpec& g);
double phi_j(int j, const std::array<int, 3>& k, const GridSpec& g);

// Largest block index whose support meets the lattice: smallest J with
// 2^{J-1} > max_l1_xi would already be empty, so blocks run over 0..j_max.
int j_max(const GridSpec& g);

// Support bounds of phi_j in l1 radius.
inline double block_inner_radius(int j) { return std::pow(2.0, j - 1); }
inline double block_outer_radius(int j) { return 5 * std::pow(2.0, j - 2); }

}  // namespace okg

#endif
