#include "okg/generators.hh"

#include <cmath>
#include <stdexcept>

namespace okg {

Spectrum gen_gaussian_octant(const GridSpec& g, const std::array<double, 3>& center_xi,
                             double width, double amplitude, double band_xi) {
  validate(g);
  if (!(width > 0)) throw std::invalid_argument("gen_gaussian_octant: width must be positive");
  if (band_xi <= 0) band_xi = g.nyquist_xi();
  const double cut = 6 * width;
  for (int a = 0; a < g.d; ++a) {
    if (!(center_xi[a] > 0))
      throw std::invalid_argument("gen_gaussian_octant: center must lie in the open octant");
    if (!(center_xi[a] - cut > 0))
      throw std::invalid_argument("gen_gaussian_octant: truncated support leaks out of the octant");
    if (!(center_xi[a] + cut < band_xi))
      throw std::invalid_argument("gen_gaussian_octant: truncated support exceeds the band limit");
  }

  Spectrum F = make_spectrum(g);
  const double inv2w2 = 1.0 / (2 * width * width);
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
    double r2 = 0;
    for (int a = 0; a < g.d; ++a) {
      const double dxi = 2 * pi * k[a] / g.L - center_xi[a];
      r2 += dxi * dxi;
    }
    if (r2 <= cut * cut) F.coeffs[flat] = amplitude * std::exp(-r2 * inv2w2);
  });
  return F;
}

Spectrum gen_sokhotski_plemelj(const GridSpec& g, int k, double eps, double series_rate, double s,
                               double* tail_fraction) {
  validate(g);
  if (g.d != 1) throw std::invalid_argument("gen_sokhotski_plemelj: one-dimensional only");
  if (k < 0) throw std::invalid_argument("gen_sokhotski_plemelj: derivative order must be >= 0");
  if (!(eps > 0)) throw std::invalid_argument("gen_sokhotski_plemelj: eps must be positive");
  const double slot = eps / g.dxi();
  if (std::abs(slot - std::rint(slot)) > 1e-9)
    throw std::invalid_argument("gen_sokhotski_plemelj: eps must sit on the frequency lattice");
  if (series_rate > 0 && !(series_rate < std::abs(s) * std::log(2.0)))
    throw std::invalid_argument(
        "gen_sokhotski_plemelj: series rate must stay below |s| ln 2 for the weighted "
        "spectrum to decay");
  if (series_rate < 0) throw std::invalid_argument("gen_sokhotski_plemelj: series rate must be >= 0");

  Spectrum F = make_spectrum(g);
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& kk) {
    const double xi = 2 * pi * kk[0] / g.L;
    if (xi < eps - 1e-12) return;
    const double off = xi - eps;
    F.coeffs[flat] = series_rate > 0 ? cxd(std::exp(series_rate * off), 0)
                                     : std::pow(cxd(0, off), k);
  });

  if (tail_fraction) {
    // l2 share of the top occupied octave (per-axis slots above half Nyquist).
    double total = 0, top = 0;
    for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& kk) {
      const double m = std::norm(F.coeffs[flat]);
      total += m;
      if (kk[0] > g.n / 4) top += m;
    });
    *tail_fraction = total > 0 ? std::sqrt(top / total) : 0;
  }
  return F;
}

Spectrum gen_concentrating(const GridSpec& g, int k) {
  validate(g);
  if (k < 1) throw std::invalid_argument("gen_concentrating: k must be >= 1");
  Spectrum F = make_spectrum(g);
  const double radius = 1.0 / k;
  const double amp = std::pow(static_cast<double>(k), 0.5 * g.d);
  std::int64_t inside = 0;
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& kk) {
    if (l1_frequency(kk, g) <= radius) {
      F.coeffs[flat] = amp;
      ++inside;
    }
  });
  if (inside < 3)
    throw std::invalid_argument("gen_concentrating: ball of radius 1/k is under-resolved");
  return F;
}

Spectrum random_spectrum(const GridSpec& g, std::mt19937_64& rng, const SupportRegion& region,
                         double band_xi) {
  validate(g);
  std::normal_distribution<double> gauss(0, 1);
  Spectrum F = make_spectrum(g);
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
    // Draw in fixed lattice order so a seeded engine reproduces the field.
    const double re = gauss(rng), im = gauss(rng);
    if (!region.contains(k, g)) return;
    if (band_xi > 0) {
      for (int a = 0; a < g.d; ++a)
        if (std::abs(2 * pi * k[a] / g.L) > band_xi) return;
    }
    F.coeffs[flat] = cxd(re, im);
  });
  return F;
}

}  // namespace okg
