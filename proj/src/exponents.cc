#include "okg/exponents.hh"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace okg {

namespace {

double delta_of(double p) {
  if (std::isinf(p)) return 0.5;
  return 0.5 - 1.0 / p;
}

// gamma from its reciprocal-half form; 2/gamma == 0 means gamma = infinity.
double gamma_of(int d, double theta, double delta) {
  const double two_over_gamma = (d - 1 + theta) * delta;
  if (two_over_gamma == 0) return std::numeric_limits<double>::infinity();
  return 2.0 / two_over_gamma;
}

double sigma_of(int d, double theta, double delta) {
  return 0.5 * (d + 1 + theta) * delta;
}

}  // namespace

ExponentTable strichartz_exponents(int d, double p, double theta) {
  if (d < 1 || d > 3) throw std::invalid_argument("strichartz_exponents: d must be 1, 2, or 3");
  if (!(p >= 2)) throw std::invalid_argument("strichartz_exponents: p < 2");
  if (!(theta >= 0 && theta <= 1))
    throw std::invalid_argument("strichartz_exponents: theta outside [0, 1]");

  ExponentTable t;
  t.d = d;
  t.p = p;
  t.theta = theta;
  t.delta = delta_of(p);
  t.gamma = gamma_of(d, theta, t.delta);
  t.sigma_strich = sigma_of(d, theta, t.delta);
  t.gamma0 = gamma_of(d, 1.0, t.delta);
  t.sigma0 = sigma_of(d, 1.0, t.delta);
  t.gamma1 = gamma_of(d, 0.0, t.delta);
  t.sigma1 = sigma_of(d, 0.0, t.delta);
  const double two_over_gamma = (d - 1 + theta) * t.delta;
  t.admissible = two_over_gamma >= 0 && two_over_gamma <= 1;
  return t;
}

double critical_index(int d, double alpha) {
  if (d < 1 || d > 3) throw std::invalid_argument("critical_index: d must be 1, 2, or 3");
  if (!(alpha > 0)) throw std::invalid_argument("critical_index: alpha must be positive");
  return 0.5 * d - 2.0 / alpha;
}

double half_regularity_exponent(int d, double theta) {
  if (d < 1 || d > 3) throw std::invalid_argument("half_regularity_exponent: d must be 1, 2, or 3");
  if (!(theta >= 0 && theta <= 1))
    throw std::invalid_argument("half_regularity_exponent: theta outside [0, 1]");
  const double denom = d - 1 + theta;
  if (denom == 0)
    throw std::domain_error("half_regularity_exponent: d = 1 with theta = 0 has no finite exponent");
  return 2.0 * (d + 1 + theta) / denom;
}

TheoremParameters theorem_parameters(int d, double alpha) {
  if (d < 1 || d > 3) throw std::invalid_argument("theorem_parameters: d must be 1, 2, or 3");
  if (!(alpha > 0)) throw std::invalid_argument("theorem_parameters: alpha must be positive");

  const double theta_raw = 4.0 / alpha - (d - 1);
  if (theta_raw > 1.0)
    throw std::domain_error("theorem_parameters: alpha below 4/d is outside the covered range");
  if (theta_raw <= 0) {
    if (d == 1)
      throw std::domain_error("theorem_parameters: d = 1 requires theta in (0, 1], i.e. finite alpha >= 4");
    return {2.0 * (d + 1) / (d - 1), 0.0};
  }
  return {half_regularity_exponent(d, theta_raw), theta_raw};
}

}  // namespace okg
