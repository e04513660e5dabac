#include "okg/norms.hh"

#include <cmath>
#include <sstream>

#include "okg/transform.hh"

namespace okg {

IndexSet IndexSet::zlambda(double lambda) {
  if (!(lambda > 1)) throw std::invalid_argument("zlambda: lambda must exceed 1");
  return {Kind::zlambda, lambda};
}

IndexSet IndexSet::zlambda_c(double lambda) {
  if (!(lambda > 1)) throw std::invalid_argument("zlambda_c: lambda must exceed 1");
  return {Kind::zlambda_c, lambda};
}

bool IndexSet::contains(int j) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::zlambda:
      return j <= std::log2(lambda) + 1e-12;
    case Kind::zlambda_c:
      return j > std::log2(lambda) + 1e-12;
  }
  return false;
}

namespace {

// 2^{s r} with an overflow guard that names the offending radius. Underflow
// to zero is fine (it just kills the mode); overflow would silently poison
// every norm downstream.
double weight_2sr(double s, double r, bool occupied) {
  const double e = s * r;
  if (e > 1023.0) {
    if (occupied) {
      std::ostringstream msg;
      msg << "smoothing weight 2^{s|xi|} overflows at |xi| = " << r << " (s = " << s << ")";
      throw std::range_error(msg.str());
    }
    return 0;  // unoccupied mode, value irrelevant
  }
  return std::exp2(e);
}

}  // namespace

Spectrum smooth(const Spectrum& F, double s) {
  Spectrum out = F;
  if (s == 0) return out;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    const double r = l1_frequency(k, F.grid);
    out.coeffs[flat] *= weight_2sr(s, r, F.coeffs[flat] != cxd(0, 0));
  });
  return out;
}

Spectrum bracket(const Spectrum& F, double sigma) {
  Spectrum out = F;
  if (sigma == 0) return out;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    out.coeffs[flat] *= std::pow(1.0 + l2_frequency_sq(k, F.grid), sigma / 2);
  });
  return out;
}

double e_norm(const Spectrum& F, double sigma, double s) {
  double sum = 0;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    const double m = std::norm(F.coeffs[flat]);
    if (m == 0) return;
    const double w2 = weight_2sr(2 * s, l1_frequency(k, F.grid), true);
    const double b = std::pow(1.0 + l2_frequency_sq(k, F.grid), sigma);
    sum += b * w2 * m;
  });
  return std::sqrt(F.grid.volume() * sum);
}

double sobolev_norm(const Spectrum& F, double sigma) { return e_norm(F, sigma, 0); }

double lq_aggregate(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  if (q == 1) {
    double s = 0;
    for (double t : terms) s += t;
    return s;
  }
  double s = 0;
  for (double t : terms) s += std::pow(t, q);
  return std::pow(s, 1.0 / q);
}

namespace {

// Coefficients of 2^{s|xi|} phi_j F (or the psi block for j = 0).
CArray smoothed_block_coeffs(const Spectrum& F, int j, double s) {
  CArray out = F.coeffs;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    const double r = l1_frequency(k, F.grid);
    const double b = j == 0 ? psi_profile(r) : phi_j_profile(j, r);
    if (b == 0) {
      out[flat] = 0;
      return;
    }
    const double w = s == 0 ? 1.0 : weight_2sr(s, r, out[flat] != cxd(0, 0));
    out[flat] *= b * w;
  });
  return out;
}

double lp_of_coeffs(const CArray& coeffs, const GridSpec& g, double p) {
  Field f = inverse(Spectrum{g, coeffs});
  return std::isinf(p) ? field_linf(f) : field_lp(f, p);
}

}  // namespace

double besov_norm(const Spectrum& F, const NormSpec& spec, const IndexSet& set) {
  const int J = j_max(F.grid);
  std::vector<double> terms;
  terms.reserve(J + 1);
  for (int j = 0; j <= J; ++j) {
    if (!set.contains(j)) continue;
    const CArray c = smoothed_block_coeffs(F, j, spec.s);
    terms.push_back(std::exp2(spec.sigma * j) * lp_of_coeffs(c, F.grid, spec.p));
  }
  return lq_aggregate(terms, spec.q);
}

double triebel_norm(const Spectrum& F, const NormSpec& spec) {
  const int J = j_max(F.grid);
  const std::int64_t N = F.grid.size();
  // Pointwise lq accumulation over blocks, then one L^p quadrature.
  RArray acc = RArray::Zero(N);
  const bool qinf = std::isinf(spec.q);
  for (int j = 0; j <= J; ++j) {
    const CArray c = smoothed_block_coeffs(F, j, spec.s);
    Field f = inverse(Spectrum{F.grid, c});
    const double wj = std::exp2(spec.sigma * j);
    if (qinf)
      acc = acc.max(wj * f.samples.abs());
    else if (spec.q == 1)
      acc += wj * f.samples.abs();
    else
      acc += (wj * f.samples.abs()).pow(spec.q);
  }
  if (!qinf && spec.q != 1) acc = acc.pow(1.0 / spec.q);
  if (std::isinf(spec.p)) return acc.maxCoeff();
  return std::pow(F.grid.cell_volume() * acc.pow(spec.p).sum(), 1.0 / spec.p);
}

double bessel_norm(const Spectrum& F, double sigma, double s, double p) {
  return lp_of_coeffs(bracket(smooth(F, s), sigma).coeffs, F.grid, p);
}

TimeGrid uniform_time_grid(double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("time grid: need at least one step");
  if (!(t1 > t0)) throw std::invalid_argument("time grid: t1 must exceed t0");
  TimeGrid tg;
  const double dt = (t1 - t0) / steps;
  tg.times.resize(steps + 1);
  tg.weights.assign(steps + 1, dt);
  for (int i = 0; i <= steps; ++i) tg.times[i] = t0 + i * dt;
  tg.weights.front() = dt / 2;
  tg.weights.back() = dt / 2;
  return tg;
}

double chemin_lerner_norm(const TimeSeriesField& u, const TimeNormSpec& spec) {
  if (u.snapshots.size() != u.time.times.size())
    throw std::invalid_argument("chemin_lerner: snapshot count does not match time grid");
  const int J = j_max(u.grid);
  const std::size_t T = u.snapshots.size();
  const bool ginf = std::isinf(spec.gamma);
  std::vector<double> terms;
  for (int j = 0; j <= J; ++j) {
    if (!spec.set.contains(j)) continue;
    double acc = 0;
    for (std::size_t i = 0; i < T; ++i) {
      const CArray c = smoothed_block_coeffs(u.snapshots[i], j, spec.space.s);
      const double v = lp_of_coeffs(c, u.grid, spec.space.p);
      if (ginf)
        acc = std::max(acc, v);
      else
        acc += u.time.weights[i] * std::pow(v, spec.gamma);
    }
    if (!ginf) acc = std::pow(acc, 1.0 / spec.gamma);
    terms.push_back(std::exp2(spec.space.sigma * j) * acc);
  }
  return lq_aggregate(terms, spec.space.q);
}

}  // namespace okg
