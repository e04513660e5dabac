#ifndef OKG_GENERATORS_HH
#define OKG_GENERATORS_HH

#include <array>
#include <random>

#include "okg/grid.hh"

/*
 Canonical spectral data families.

 gen_gaussian_octant   smooth bump in frequency, compactly truncated so the
                       support sits strictly inside the first octant
 gen_sokhotski_plemelj the rough one-dimensional family built on the
                       Heaviside spectrum: either a single derivative order
                       (i(xi-eps))^k H(xi-eps) or the summed modulation
                       series e^{rate (xi-eps)} H(xi-eps)
 gen_concentrating     k^{d/2} times the indicator of the l1 ball of radius
                       1/k, whose L2 mass stays k-uniform while every
                       negative-s exponential norm collapses like 2^{s/k}
 random_spectrum       seeded Gaussian coefficients on a support region,
                       deterministic for a fixed engine state

 The Heaviside families are genuinely rough: their Sobolev mass diverges as
 the lattice refines. The tail_fraction output reports the l2 share of the
 top occupied octave so callers see how hard the Nyquist cut bites.
*/

namespace okg {

Spectrum gen_gaussian_octant(const GridSpec& g, const std::array<double, 3>& center_xi,
                             double width, double amplitude, double band_xi = 0);

// d = 1 only; eps must sit on the frequency lattice. series_rate = 0 selects
// the single-order form; series_rate > 0 selects the summed series and must
// stay below |s| ln 2 so the weighted spectrum decays.
Spectrum gen_sokhotski_plemelj(const GridSpec& g, int k, double eps, double series_rate = 0,
                               double s = 0, double* tail_fraction = nullptr);

Spectrum gen_concentrating(const GridSpec& g, int k);

Spectrum random_spectrum(const GridSpec& g, std::mt19937_64& rng,
                         const SupportRegion& region = SupportRegion::full_region(),
                         double band_xi = 0);

}  // namespace okg

#endif
