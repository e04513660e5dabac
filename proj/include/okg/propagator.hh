#ifndef OKG_PROPAGATOR_HH
#define OKG_PROPAGATOR_HH

#include <vector>

#include "okg/exponents.hh"
#include "okg/grid.hh"
#include "okg/norms.hh"

/*
 Linear Klein-Gordon machinery for d_tt u + lambda^2 u - Lap u = f, all as
 diagonal Fourier multipliers in omega = sqrt(lambda^2 + |xi|_2^2):

   half_wave      e^{i t omega}
   sine_kernel    sin(t omega) / omega
   cosine_kernel  cos(t omega)

 omega uses the Euclidean frequency magnitude; the l1 convention of grid.hh
 applies only to the exponential weights and block radii. Duhamel integrals
 are composite trapezoid sums on a uniform time grid, so their error is
 O(dt^2) for integrands smooth in time.
*/

namespace okg {

struct PropagatorSpec {
  double lambda = 1;
  GridSpec grid;
};

void validate(const PropagatorSpec& spec);  // lambda >= 1 and a valid grid

Spectrum half_wave(const Spectrum& F, const PropagatorSpec& spec, double t);
Spectrum sine_kernel(const Spectrum& F, const PropagatorSpec& spec, double t);
Spectrum cosine_kernel(const Spectrum& F, const PropagatorSpec& spec, double t);

// u(t_i) = cos-kernel u0 + sin-kernel u1 + int_0^{t_i} sin-kernel(t_i - tau) f(tau) dtau.
// Pass f = nullptr for the homogeneous problem; otherwise f must sit on the
// same space and time grid (misalignment throws).
TimeSeriesField linear_solve(const Spectrum& u0, const Spectrum& u1, const TimeSeriesField* f,
                             const PropagatorSpec& spec, const TimeGrid& times);

// int_0^t half_wave(t - tau) f(tau) dtau; t must be one of f's grid times.
Spectrum duhamel(const TimeSeriesField& f, const PropagatorSpec& spec, double t);

struct DecayScanReport {
  int d = 1;
  double lambda = 1;
  int j = 0;
  bool low_regime = false;  // 2^j strictly below lambda: mass term dominates
  GridSpec scan_grid;
  std::vector<double> times;
  std::vector<double> sup_norms;      // sup_x |kernel(t, x)| per time
  double slope = 0;                   // log-log fit of sup against t
  double fit_residual = 0;
  double wrap_fraction = 0;           // worst boundary-band l2 mass ratio seen
  double multiplier_mass = 0;         // (1/L^d) sum_k phi_j, the t-free sup bound
};

struct DecayGridPolicy {
  double pad = 12;            // initial half-length margin beyond t_max; the
                              // torus then doubles until the wrap guard passes
  double radius_factor = 2;   // per-axis Nyquist >= factor * block outer radius
  long long max_modes = 1LL << 25;  // total mode budget n^d (memory guard)
  double wrap_tol = 1e-6;
};

// Tracks sup_x of the kernel of half_wave restricted to dyadic block j on a
// torus long enough that nothing reaches the boundary within the scan window.
DecayScanReport decay_scan(int d, double lambda, int j, const std::vector<double>& times,
                           const DecayGridPolicy& policy = {});

struct StrichartzSample {
  double ratio = 0;  // worst case over the family
  double window = 0;
  std::vector<double> per_input;
};

// Finite-window diagnostic for the dispersive space-time bounds: for each u0,
// the weighted Chemin-Lerner norm of t -> half_wave(t) u0 over [0, window]
// against e_norm(u0, sigma, s). The block set picks the branch: frequencies
// at or below lambda measure B^{sigma-(1-theta)delta, s}_{p,2} with prefactor
// lambda^{-1/gamma}; the complement measures B^{sigma-sigma(theta,p), s}_{p,2}
// with prefactor lambda^{+theta delta}. A compact torus has no long-time
// dispersion, so this is a reported constant, not a bounded one.
StrichartzSample strichartz_sample(const std::vector<Spectrum>& u0s, const PropagatorSpec& spec,
                                   const ExponentTable& table, const IndexSet& set, double sigma,
                                   double s, double window, int time_steps);

}  // namespace okg

#endif
