#ifndef OKG_SOLVER_HH
#define OKG_SOLVER_HH

#include <utility>
#include <vector>

#include "okg/grid.hh"
#include "okg/norms.hh"

/*
 Fixed-point construction of mild solutions of

   d_tt v + lambda^2 v - Lap v + N(v) = 0,
   N(v) = sign * coeff * f_kind(v),  coeff = 1 or lambda^2 by mass variant,

 with first-octant spectral data. The Picard map is

   T v = cos-kernel u0 + sin-kernel u1 - int_0^t sin-kernel(t - tau) N(v) dtau,

 iterated from the free evolution until the relative successive difference
 in the monitoring norm (sup over snapshots of e_norm(sigma, s)) drops below
 picard_tol. The nonlinearity is evaluated pointwise in physical space and
 truncated back to the band |k|_inf <= K_max. The band is sized so that
 products of 1 + alpha_eff in-band factors stay strictly below Nyquist:
 every product is then exactly representable, nothing aliases, and products
 of first-octant modes stay in the first octant identically. Truncation by
 the band cut is the only loss and its mass share is reported per iterate.

 Rough data on an octant torus push mass toward high frequencies; when the
 band cut would discard more than 1e-6 of a nonlinear term's mass the run
 aborts with a diagnostic instead of silently clipping the dynamics. The
 in-band top-octave share is reported alongside as an early-warning signal.
*/

namespace okg {

struct NonlinearitySpec {
  enum class Kind { power, sinh_minus_u, sin_minus_u, exp_square_minus_u };
  Kind kind = Kind::power;
  int alpha = 2;         // power case: f(v) = v^{1+alpha}
  double sign = 1;       // scales the whole term; 0 switches it off
  int taylor_terms = 2;  // series kinds: number of odd Taylor terms kept
};

// Highest power the evaluation touches: alpha for power, 2*terms+1 for series.
int effective_power(const NonlinearitySpec& nl);

enum class MassVariant {
  unit,          // nonlinearity coefficient 1
  mass_squared,  // nonlinearity coefficient lambda^2
};

struct MonitorSpec {
  double sigma = 0;
  double s = 0;
};

struct SolverConfig {
  double lambda = 1;
  double T = 1;
  int n_t = 64;  // uniform steps; snapshots = n_t + 1
  GridSpec grid;
  double picard_tol = 1e-10;
  int max_iter = 25;
  int k_max = 0;  // 0 derives the largest alias-free band for the nonlinearity
  MassVariant mass_variant = MassVariant::unit;
  MonitorSpec monitor;
};

int derived_k_max(const SolverConfig& cfg, const NonlinearitySpec& nl);
void validate(const SolverConfig& cfg, const NonlinearitySpec& nl);

struct IterationReport {
  std::vector<double> diffs;       // relative successive-difference norms
  std::vector<double> leakage;     // worst octant leakage over snapshots
  std::vector<double> tail;        // worst band-truncation share over snapshots
  std::vector<double> top_octave;  // worst in-band top-octave share
  double final_residual = 0;       // relative |v - T v| measured after the loop
  double contraction = 0;          // last successive-difference ratio
  int iterations = 0;
  bool converged = false;
  bool aborted_tail = false;
};

// N(v) for one snapshot, dealiased to the band. Input must be band-limited.
Spectrum apply_nonlinearity(const Spectrum& v, const NonlinearitySpec& nl, const SolverConfig& cfg,
                            double* tail_share = nullptr);

std::pair<TimeSeriesField, IterationReport> picard_solve(const Spectrum& u0, const Spectrum& u1,
                                                         const NonlinearitySpec& nl,
                                                         const SolverConfig& cfg);

// Exact remap u(x, t) -> lambda^{2/alpha} u(lambda x, lambda t) (forward) or
// its inverse (back): companion torus, rescaled time grid, amplitude factor.
enum class ScaleDirection { forward, back };
TimeSeriesField scale_solution(const TimeSeriesField& u, double lambda, double alpha,
                               ScaleDirection dir);

struct LambdaSelection {
  double lambda = 1;
  double s0 = 0;                // post-scaling smoothing index lambda * s
  double achieved = 0;          // scaled-data norm at the chosen lambda
  bool met_target = false;
  std::vector<double> scanned;  // scaled-data norm per grid entry
};

// Smallest lambda in the grid whose scaled data lands below delta in
// e_norm(sigma, s) + e_norm(sigma - 1, s); norms are evaluated directly on
// the remapped data, not estimated. Falls back to the best achieved value
// when no entry meets the target.
LambdaSelection select_lambda(const Spectrum& u0, const Spectrum& u1, double sigma, double s,
                              double alpha, double eps0, double delta,
                              const std::vector<double>& lambda_grid);

}  // namespace okg

#endif
