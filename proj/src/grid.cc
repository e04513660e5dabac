#include "okg/grid.hh"

#include <cmath>

namespace okg {

void validate(const GridSpec& g) {
  if (g.d < 1 || g.d > 3) throw std::invalid_argument("grid: d must be 1, 2 or 3");
  if (g.n < 8) throw std::invalid_argument("grid: n must be >= 8");
  if (g.n & (g.n - 1)) throw std::invalid_argument("grid: n must be a power of two");
  if (!(g.L > 0)) throw std::invalid_argument("grid: L must be positive");
}

double l1_frequency(const std::array<int, 3>& k, const GridSpec& g) {
  double s = 0;
  for (int a = 0; a < g.d; ++a) s += std::abs(k[a]);
  return s * g.dxi();
}

double l2_frequency_sq(const std::array<int, 3>& k, const GridSpec& g) {
  double s = 0;
  for (int a = 0; a < g.d; ++a) s += double(k[a]) * k[a];
  return s * g.dxi() * g.dxi();
}

Field make_field(const GridSpec& g) {
  validate(g);
  return {g, CArray::Zero(g.size())};
}

Spectrum make_spectrum(const GridSpec& g) {
  validate(g);
  return {g, CArray::Zero(g.size())};
}

SupportRegion SupportRegion::octant_gap(double eps0) {
  if (!(eps0 > 0)) throw std::invalid_argument("octant_gap: eps0 must be positive");
  return {Kind::octant_gap, eps0, 0};
}

SupportRegion SupportRegion::annulus(double eps0) {
  if (!(eps0 > 0)) throw std::invalid_argument("annulus: eps0 must be positive");
  return {Kind::annulus, eps0, 0};
}

SupportRegion SupportRegion::ball(double rho) {
  if (!(rho > 0)) throw std::invalid_argument("ball: rho must be positive");
  return {Kind::ball, 0, rho};
}

bool SupportRegion::contains(const std::array<int, 3>& k, const GridSpec& g) const {
  switch (kind) {
    case Kind::full:
      return true;
    case Kind::octant:
      for (int a = 0; a < g.d; ++a)
        if (k[a] < 0) return false;
      return true;
    case Kind::octant_gap:
      for (int a = 0; a < g.d; ++a)
        if (k[a] < 0) return false;
      return l1_frequency(k, g) >= eps0;
    case Kind::annulus:
      return l1_frequency(k, g) >= eps0;
    case Kind::ball:
      return l1_frequency(k, g) <= rho;
  }
  return false;
}

Spectrum project(const Spectrum& F, const SupportRegion& R) {
  Spectrum out = F;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    if (!R.contains(k, F.grid)) out.coeffs[flat] = 0;
  });
  return out;
}

double support_mass_outside(const Spectrum& F, const SupportRegion& R) {
  double out = 0, tot = 0;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    const double m = std::norm(F.coeffs[flat]);
    tot += m;
    if (!R.contains(k, F.grid)) out += m;
  });
  if (tot == 0) return 0;
  return std::sqrt(out) / std::sqrt(tot);
}

double field_l2(const Field& f) {
  return std::sqrt(f.grid.cell_volume() * f.samples.abs2().sum());
}

double spectrum_l2(const Spectrum& F) {
  return std::sqrt(F.grid.volume() * F.coeffs.abs2().sum());
}

double field_lp(const Field& f, double p) {
  if (std::isinf(p)) return field_linf(f);
  return std::pow(f.grid.cell_volume() * f.samples.abs().pow(p).sum(), 1.0 / p);
}

double field_linf(const Field& f) { return f.samples.abs().maxCoeff(); }

cxd inner(const Spectrum& a, const Spectrum& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner: grid mismatch");
  return a.grid.volume() * (a.coeffs.conjugate() * b.coeffs).sum();
}

}  // namespace okg
