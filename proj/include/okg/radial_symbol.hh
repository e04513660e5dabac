#ifndef OKG_RADIAL_SYMBOL_HH
#define OKG_RADIAL_SYMBOL_HH

#include <vector>

/*
 Closed-form derivatives of the radial symbol p(r) = (mu^2 + r^2)^alpha.
 Even orders take the form

   p^(2k)(r) = sum_{j=0}^k a_{k,j} mu^{2j} (mu^2 + r^2)^{alpha-k-j}

 and odd orders follow by one direct differentiation,

   p^(2k+1)(r) = 2r sum_{j=0}^k (alpha-k-j) a_{k,j} mu^{2j} (mu^2 + r^2)^{alpha-k-j-1}.

 The coefficients obey a_{0,0} = 1 and

   a_{k+1,0} = 2 a_{k,0} (alpha-k)(2 alpha-2k-1)
   a_{k+1,j} = 2 a_{k,j} (alpha-k-j)(2 alpha-2k-2j-1)
             - 4 a_{k,j-1} (alpha-k-j)(alpha-k-j+1),   1 <= j <= k+1,

 reading a_{k,k+1} = 0. Differentiating twice and eliminating r^2 via
 r^2 = (mu^2+r^2) - mu^2 reproduces exactly this j-shifted cross term; the
 k = 1 row is 2 alpha (2 alpha - 1) and -4 alpha (alpha - 1), which pins the
 sign and the factor of 4. Every derivative satisfies the ratio bound

   |p^(l)(r)| <= C (mu^2 + r^2)^{alpha - l/2}    (uniform over r for mu > 0),

 exposed below for direct measurement.
*/

namespace okg {

struct DerivativeTable {
  double alpha = 0;
  std::vector<std::vector<double>> a;  // a[k][j], j = 0..k
};

DerivativeTable derivative_table(double alpha, int k_max);

// p^(ell)(r) for ell <= 2 k_max + 1; mu must be positive.
double radial_derivative(const DerivativeTable& t, double mu, double r, int ell);

// |p^(ell)(r)| / (mu^2 + r^2)^{alpha - ell/2}
double derivative_ratio(const DerivativeTable& t, double mu, double r, int ell);

}  // namespace okg

#endif
