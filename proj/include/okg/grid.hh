#ifndef OKG_GRID_HH
#define OKG_GRID_HH

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>

/*
 Periodic isotropic lattice on the torus [0, L)^d, d = 1..3, n points per
 axis (power of two). Physical samples live on x_m = m L / n; spectral
 coefficients live on the integer frequency lattice k in [-n/2, n/2)^d with
 physical frequency xi = 2 pi k / L. Storage is row-major over the lattice
 with the usual DFT slot order per axis (slot i holds k = i for i < n/2 and
 k = i - n otherwise, so the Nyquist slot carries k = -n/2).

 Two frequency magnitudes are used side by side and must not be mixed up:
   l1_frequency  |xi|_1  = sum_i |2 pi k_i / L|   (exponential weights 2^{s|xi|},
                                                   dyadic bumps, support regions)
   l2 magnitude  |xi|_2  = 2 pi |k|_2 / L         (<xi> brackets, the symbol
                                                   sqrt(lambda^2 + |xi|^2))
*/

namespace okg {

using cxd = std::complex<double>;
using CArray = Eigen::ArrayX<cxd>;
using RArray = Eigen::ArrayXd;

inline constexpr double pi = 3.14159265358979323846;

struct GridSpec {
  int d = 1;
  int n = 8;
  double L = 2 * pi;

  std::int64_t size() const {
    std::int64_t s = 1;
    for (int i = 0; i < d; ++i) s *= n;
    return s;
  }
  double dx() const { return L / n; }
  double dxi() const { return 2 * pi / L; }
  // largest per-axis |xi| on the lattice (attained by the Nyquist slot)
  double nyquist_xi() const { return dxi() * (n / 2); }
  // largest l1 radius over the whole lattice (corner modes in d > 1)
  double max_l1_xi() const { return d * nyquist_xi(); }
  double cell_volume() const {
    double v = 1;
    for (int i = 0; i < d; ++i) v *= dx();
    return v;
  }
  double volume() const {
    double v = 1;
    for (int i = 0; i < d; ++i) v *= L;
    return v;
  }
  bool operator==(const GridSpec& o) const { return d == o.d && n == o.n && L == o.L; }
};

void validate(const GridSpec& g);

inline int signed_index(int slot, int n) { return slot < n / 2 ? slot : slot - n; }
inline int slot_of(int k, int n) { return k >= 0 ? k : k + n; }

// Per-axis signed indices of a flat row-major position (axis 0 slowest).
inline std::array<int, 3> signed_indices(std::int64_t flat, const GridSpec& g) {
  std::array<int, 3> k{0, 0, 0};
  for (int a = g.d - 1; a >= 0; --a) {
    k[a] = signed_index(static_cast<int>(flat % g.n), g.n);
    flat /= g.n;
  }
  return k;
}

inline std::int64_t flat_index(const std::array<int, 3>& k, const GridSpec& g) {
  std::int64_t f = 0;
  for (int a = 0; a < g.d; ++a) f = f * g.n + slot_of(k[a], g.n);
  return f;
}

double l1_frequency(const std::array<int, 3>& k, const GridSpec& g);
double l2_frequency_sq(const std::array<int, 3>& k, const GridSpec& g);

// Visit every lattice slot in row-major order: f(flat, k).
template <class F>
void for_each_mode(const GridSpec& g, F&& f) {
  const int n = g.n;
  std::array<int, 3> k{0, 0, 0};
  std::int64_t flat = 0;
  if (g.d == 1) {
    for (int i0 = 0; i0 < n; ++i0, ++flat) {
      k[0] = signed_index(i0, n);
      f(flat, k);
    }
  } else if (g.d == 2) {
    for (int i0 = 0; i0 < n; ++i0) {
      k[0] = signed_index(i0, n);
      for (int i1 = 0; i1 < n; ++i1, ++flat) {
        k[1] = signed_index(i1, n);
        f(flat, k);
      }
    }
  } else {
    for (int i0 = 0; i0 < n; ++i0) {
      k[0] = signed_index(i0, n);
      for (int i1 = 0; i1 < n; ++i1) {
        k[1] = signed_index(i1, n);
        for (int i2 = 0; i2 < n; ++i2, ++flat) {
          k[2] = signed_index(i2, n);
          f(flat, k);
        }
      }
    }
  }
}

struct Field {
  GridSpec grid;
  CArray samples;
};

struct Spectrum {
  GridSpec grid;
  CArray coeffs;
};

Field make_field(const GridSpec& g);
Spectrum make_spectrum(const GridSpec& g);

struct SupportRegion {
  enum class Kind { full, octant, octant_gap, annulus, ball };
  Kind kind = Kind::full;
  double eps0 = 0;  // octant_gap / annulus threshold, l1 units
  double rho = 0;   // ball radius, l1 units

  static SupportRegion full_region() { return {Kind::full, 0, 0}; }
  static SupportRegion octant() { return {Kind::octant, 0, 0}; }
  static SupportRegion octant_gap(double eps0);
  static SupportRegion annulus(double eps0);
  static SupportRegion ball(double rho);

  bool contains(const std::array<int, 3>& k, const GridSpec& g) const;
};

Spectrum project(const Spectrum& F, const SupportRegion& R);
double support_mass_outside(const Spectrum& F, const SupportRegion& R);

// Discrete norms carrying the torus measure, chosen so that
// field_l2(inverse(F)) == spectrum_l2(F) exactly (Parseval).
double field_l2(const Field& f);
double spectrum_l2(const Spectrum& F);
double field_lp(const Field& f, double p);  // p = inf handled by the caller via field_linf
double field_linf(const Field& f);
cxd inner(const Spectrum& a, const Spectrum& b);  // L^d-weighted frequency inner product

}  // namespace okg

#endif
