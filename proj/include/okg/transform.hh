#ifndef OKG_TRANSFORM_HH
#define OKG_TRANSFORM_HH

#include "okg/grid.hh"

/*
 Discrete Fourier transforms between Field and Spectrum, normalized so that
 the coefficients are the Fourier-series coefficients of the sampled field:

   forward:  c_k = n^{-d} sum_m f(x_m) e^{-2 pi i k.m / n}
   inverse:  f(x_m) = sum_k c_k e^{+2 pi i k.m / n}

 With the measures of grid.hh this makes Parseval an equality,
 field_l2(f) == spectrum_l2(forward(f)), and inverse(forward(f)) == f.
 Backend is FFTW (complex-to-complex, row-major, serial plans). The FFTW
 planner is not thread-safe and is guarded by a global mutex; execution of
 ready plans is concurrency-safe.
*/

namespace okg {

Spectrum forward(const Field& f);
Field inverse(const Spectrum& F);

// Unnormalized inverse DFT of multiplier samples m(xi_k) laid out on the
// spectral lattice: out(x_m) = sum_k m_k e^{+2 pi i k.m / n}. Used where the
// continuum convolution-kernel normalization (1/L^d) sum_k m_k e^{i xi_k x}
// is wanted; callers apply the 1/L^d themselves.
CArray raw_inverse(const CArray& m, const GridSpec& g);

}  // namespace okg

#endif
