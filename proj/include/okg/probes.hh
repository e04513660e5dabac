#ifndef OKG_PROBES_HH
#define OKG_PROBES_HH

#include <vector>

#include "okg/grid.hh"
#include "okg/norms.hh"

/*
 Measured-exponent probes for the scaling and embedding estimates. Scale
 factors are restricted to powers of two so that dilation is an exact
 reinterpretation of the coefficient array on a companion torus:

   f(lambda x)   same coeffs, period L / lambda  (frequencies lambda xi)
   f(x / lambda) same coeffs, period L * lambda  (frequencies xi / lambda)

 No interpolation happens anywhere, so fitted exponents are polluted only by
 genuine block-boundary effects, not by resampling error.
*/

namespace okg {

Spectrum contract_remap(const Spectrum& f, double lambda);
Spectrum dilate_remap(const Spectrum& f, double lambda);

enum class ScalingMode { contract, dilate };

struct ProbeFit {
  std::vector<double> lambdas;
  std::vector<double> ratios;
  double exponent = 0;        // fitted coefficient of log2(lambda)
  double rate = 0;            // fitted coefficient of lambda itself (contract only)
  double reference_rate = 0;  // s * gap_eps0 / 3 when a gap is declared
  double residual = 0;
};

/*
 Norm ratio r(lambda) = ||scaled f|| / ||f|| in the Besov scale.

 contract measures both norms at the given spec and fits
 log2 r = rate * lambda + exponent * log2 lambda + const; the rate column
 absorbs the exponential gap factor so the power-law exponent can be read
 off on its own. With a declared gap the support must avoid l1 radii below
 eps0, and the stated removal rate s * eps0 / 3 is reported next to the
 best-fit rate, which at finite lambda tracks the actual lowest occupied
 radius instead.

 dilate measures the scaled field with weight lambda * s (which makes the
 exponential weight invariant mode by mode) and fits a plain power law.
*/
ProbeFit scaling_probe(const Spectrum& f, const NormSpec& spec, const std::vector<double>& lambdas,
                       ScalingMode mode, double gap_eps0 = 0);

struct SpaceTimeProbeFit {
  std::vector<double> lambdas;
  std::vector<double> ratios;
  double exponent = 0;
  double residual = 0;
  double reference = 0;  // 1/gamma + d/p - min(sigma, 0)
};

// Chemin-Lerner ratio under the space-time dilation u(x/lambda, t/lambda),
// applied as the companion-grid remap plus a rescaled time grid, measured
// with weight lambda * s. The reference exponent is the stated growth cap.
SpaceTimeProbeFit spacetime_scaling_probe(const TimeSeriesField& u, const TimeNormSpec& spec,
                                          const std::vector<double>& lambdas);

enum class NormFamily { besov, e };

struct EmbeddingProbe {
  double constant = 0;  // max ratio over the family
  std::vector<double> per_input;
};

// Max over fs of dst-norm / src-norm. The e family reads only sigma and s
// from the specs; besov uses all four exponents. Zero inputs are skipped.
EmbeddingProbe embedding_probe(const std::vector<Spectrum>& fs, const NormSpec& src,
                               const NormSpec& dst, NormFamily family = NormFamily::besov);

}  // namespace okg

#endif
