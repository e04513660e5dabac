#include "okg/bump.hh"

#include <cmath>

namespace okg {

namespace {
inline double eta(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
}

double smooth_step(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  const double a = eta(t);
  return a / (a + eta(1 - t));
}

double psi_profile(double r) { return smooth_step((1.25 - r) * 4.0); }

double phi_profile(double r) { return psi_profile(r) - psi_profile(2 * r); }

double phi_j_profile(int j, double r) { return phi_profile(std::ldexp(r, -j)); }

double psi(const std::array<int, 3>& k, const GridSpec& g) {
  return psi_profile(l1_frequency(k, g));
}

double phi_j(int j, const std::array<int, 3>& k, const GridSpec& g) {
  return phi_j_profile(j, l1_frequency(k, g));
}

int j_max(const GridSpec& g) {
  // Include every j whose open support (2^{j-1}, 5*2^{j-2}) can meet a lattice
  // radius; the resulting 2^{j_max} >= max_l1_xi makes the telescoped partition
  // end on the plateau of psi, i.e. exactly 1, at every lattice frequency.
  const double rmax = g.max_l1_xi();
  int j = 0;
  while (block_inner_radius(j + 1) < rmax) ++j;
  return j;
}

}  // namespace okg
