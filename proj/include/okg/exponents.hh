#ifndef OKG_EXPONENTS_HH
#define OKG_EXPONENTS_HH

/*
 Space-time exponent bookkeeping for the dispersive estimates:

   delta(p)           = 1/2 - 1/p
   2/gamma(theta, p)  = (d - 1 + theta) delta(p)
   2 sigma(theta, p)  = (d + 1 + theta) delta(p)

 The theta = 1 specialization (gamma0/sigma0 here) is the heat-like regime of
 frequencies below the mass parameter; theta = 0 (gamma1/sigma1) is the
 wave-like regime above it. A pair is admissible when 2/gamma lies in [0, 1].
*/

namespace okg {

struct ExponentTable {
  int d = 1;
  double p = 2;
  double theta = 0;
  double delta = 0;         // delta(p)
  double gamma = 0;         // gamma(theta, p)
  double sigma_strich = 0;  // sigma(theta, p)
  double gamma0 = 0, sigma0 = 0;  // theta = 1 specialization
  double gamma1 = 0, sigma1 = 0;  // theta = 0 specialization
  bool admissible = false;
};

ExponentTable strichartz_exponents(int d, double p, double theta);

double critical_index(int d, double alpha);  // d/2 - 2/alpha

// Exponent r solving sigma(theta, r) = 1/2: r = 2(d+1+theta)/(d-1+theta).
double half_regularity_exponent(int d, double theta);

// The (p, theta) pair the existence arguments use for a given dimension and
// nonlinearity power 1 + alpha. theta solves alpha = 4/(d-1+theta), clamped
// to 0 for large alpha (where p = 2(d+1)/(d-1) takes over). Powers below 4/d
// fall outside the covered range; callers get a domain_error with the reason.
struct TheoremParameters {
  double p;
  double theta;
};
TheoremParameters theorem_parameters(int d, double alpha);

}  // namespace okg

#endif
