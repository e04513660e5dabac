#include "okg/probes.hh"

#include <cmath>
#include <stdexcept>

#include "okg/fit.hh"

namespace okg {

namespace {

void require_pow2(double lambda, const char* who) {
  if (!(lambda > 1)) throw std::invalid_argument(std::string(who) + ": lambda must exceed 1");
  const double l = std::log2(lambda);
  if (std::rint(l) != l) throw std::invalid_argument(std::string(who) + ": lambda must be a power of two");
}

double family_norm(const Spectrum& f, const NormSpec& spec, NormFamily family) {
  if (family == NormFamily::e) return e_norm(f, spec.sigma, spec.s);
  return besov_norm(f, spec);
}

}  // namespace

Spectrum contract_remap(const Spectrum& f, double lambda) {
  require_pow2(lambda, "contract_remap");
  Spectrum g = f;
  g.grid.L = f.grid.L / lambda;
  return g;
}

Spectrum dilate_remap(const Spectrum& f, double lambda) {
  require_pow2(lambda, "dilate_remap");
  Spectrum g = f;
  g.grid.L = f.grid.L * lambda;
  return g;
}

ProbeFit scaling_probe(const Spectrum& f, const NormSpec& spec, const std::vector<double>& lambdas,
                       ScalingMode mode, double gap_eps0) {
  validate(f.grid);
  if (lambdas.size() < (mode == ScalingMode::contract ? 3u : 2u))
    throw std::invalid_argument("scaling_probe: too few lambda values for the fit");
  if (gap_eps0 > 0) {
    if (mode != ScalingMode::contract)
      throw std::invalid_argument("scaling_probe: gap declaration only applies to contract mode");
    if (support_mass_outside(f, SupportRegion::annulus(gap_eps0)) > 1e-13)
      throw std::invalid_argument("scaling_probe: support violates the declared gap");
  }

  const double base = family_norm(f, spec, NormFamily::besov);
  if (!(base > 0)) throw std::invalid_argument("scaling_probe: zero input");

  ProbeFit out;
  out.lambdas = lambdas;
  for (double lambda : lambdas) {
    double value;
    if (mode == ScalingMode::contract) {
      value = besov_norm(contract_remap(f, lambda), spec);
    } else {
      NormSpec target = spec;
      target.s = lambda * spec.s;
      value = besov_norm(dilate_remap(f, lambda), target);
    }
    out.ratios.push_back(value / base);
  }

  if (mode == ScalingMode::contract) {
    const ExpPowerFit fit = fit_exp_power(lambdas, out.ratios);
    out.exponent = fit.power;
    out.rate = fit.rate;
    out.residual = fit.residual;
    out.reference_rate = gap_eps0 > 0 ? spec.s * gap_eps0 / 3 : 0;
  } else {
    const LineFit fit = fit_loglog(lambdas, out.ratios);
    out.exponent = fit.slope;
    out.residual = fit.residual;
  }
  return out;
}

SpaceTimeProbeFit spacetime_scaling_probe(const TimeSeriesField& u, const TimeNormSpec& spec,
                                          const std::vector<double>& lambdas) {
  validate(u.grid);
  if (u.snapshots.empty()) throw std::invalid_argument("spacetime_scaling_probe: empty series");
  if (lambdas.size() < 2) throw std::invalid_argument("spacetime_scaling_probe: need >= 2 lambdas");

  const double base = chemin_lerner_norm(u, spec);
  if (!(base > 0)) throw std::invalid_argument("spacetime_scaling_probe: zero input");

  SpaceTimeProbeFit out;
  out.lambdas = lambdas;
  for (double lambda : lambdas) {
    require_pow2(lambda, "spacetime_scaling_probe");
    TimeSeriesField v;
    v.grid = u.grid;
    v.grid.L = u.grid.L * lambda;
    v.time.times.reserve(u.time.times.size());
    v.time.weights.reserve(u.time.weights.size());
    for (double t : u.time.times) v.time.times.push_back(lambda * t);
    for (double w : u.time.weights) v.time.weights.push_back(lambda * w);
    v.snapshots.reserve(u.snapshots.size());
    for (const Spectrum& snap : u.snapshots) v.snapshots.push_back(dilate_remap(snap, lambda));

    TimeNormSpec target = spec;
    target.space.s = lambda * spec.space.s;
    out.ratios.push_back(chemin_lerner_norm(v, target) / base);
  }

  const LineFit fit = fit_loglog(lambdas, out.ratios);
  out.exponent = fit.slope;
  out.residual = fit.residual;
  const double d = u.grid.d;
  const double inv_gamma = std::isinf(spec.gamma) ? 0 : 1 / spec.gamma;
  const double inv_p = std::isinf(spec.space.p) ? 0 : 1 / spec.space.p;
  out.reference = inv_gamma + d * inv_p - std::min(spec.space.sigma, 0.0);
  return out;
}

EmbeddingProbe embedding_probe(const std::vector<Spectrum>& fs, const NormSpec& src,
                               const NormSpec& dst, NormFamily family) {
  EmbeddingProbe out;
  for (const Spectrum& f : fs) {
    const double denom = family_norm(f, src, family);
    if (denom == 0) {
      out.per_input.push_back(0);
      continue;
    }
    const double ratio = family_norm(f, dst, family) / denom;
    out.per_input.push_back(ratio);
    out.constant = std::max(out.constant, ratio);
  }
  return out;
}

}  // namespace okg
