#ifndef OKG_NORMS_HH
#define OKG_NORMS_HH

#include <limits>
#include <vector>

#include "okg/blocks.hh"
#include "okg/grid.hh"

/*
 Weighted norms over the dyadic decomposition.

   e_norm        sqrt(L^d sum_k <xi>^{2 sigma} 2^{2 s |xi|_1} |c_k|^2)
   besov_norm    lq over j of 2^{sigma j} || inv(2^{s|xi|} phi_j F) ||_p
   triebel_norm  Lp of the pointwise lq over j of 2^{sigma j} |inv(2^{s|xi|} phi_j F)|
   bessel_norm   || inv(<xi>^sigma 2^{s|xi|} F) ||_p

 Discrete L^p always uses the (L/n)^d Riemann weight of grid.hh; p or q equal
 to infinity are explicit values and branch to sup/max. Block sums may be
 restricted to the sets {j <= log2 lambda} or their complement, the split the
 propagator estimates use between frequencies below and above the mass.

 The smoothing operator 2^{s|nabla|} is an exact isometry between weights:
 applying it with shift s'-s and measuring at s reproduces the norm at s'
 digit-for-digit up to rounding, which the test suite pins at 1e-12.
*/

namespace okg {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct NormSpec {
  double sigma = 0;
  double s = 0;
  double p = 2;
  double q = 2;
};

struct IndexSet {
  enum class Kind { all, zlambda, zlambda_c };
  Kind kind = Kind::all;
  double lambda = 1;

  static IndexSet all() { return {Kind::all, 1}; }
  static IndexSet zlambda(double lambda);
  static IndexSet zlambda_c(double lambda);
  bool contains(int j) const;
};

Spectrum smooth(const Spectrum& F, double s);
Spectrum bracket(const Spectrum& F, double sigma);

double e_norm(const Spectrum& F, double sigma, double s);
double sobolev_norm(const Spectrum& F, double sigma);  // e_norm at s = 0

double besov_norm(const Spectrum& F, const NormSpec& spec, const IndexSet& set = IndexSet::all());
double triebel_norm(const Spectrum& F, const NormSpec& spec);
double bessel_norm(const Spectrum& F, double sigma, double s, double p);

// lq aggregation of nonnegative terms with explicit infinity.
double lq_aggregate(const std::vector<double>& terms, double q);

struct TimeGrid {
  std::vector<double> times;
  std::vector<double> weights;  // quadrature weights for the time integral
};

// Uniform grid over [t0, t1] with composite trapezoidal weights.
TimeGrid uniform_time_grid(double t0, double t1, int steps);

struct TimeSeriesField {
  GridSpec grid;
  TimeGrid time;
  std::vector<Spectrum> snapshots;
};

struct TimeNormSpec {
  double gamma = inf;
  NormSpec space;
  IndexSet set = IndexSet::all();
};

// L^gamma in time inside each block, then lq over blocks.
double chemin_lerner_norm(const TimeSeriesField& u, const TimeNormSpec& spec);

}  // namespace okg

#endif
