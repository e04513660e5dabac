#include "okg/radial_symbol.hh"

#include <cmath>
#include <stdexcept>

namespace okg {

DerivativeTable derivative_table(double alpha, int k_max) {
  if (k_max < 0) throw std::invalid_argument("derivative_table: k_max must be >= 0");
  DerivativeTable t;
  t.alpha = alpha;
  t.a.assign(static_cast<size_t>(k_max) + 1, {});
  t.a[0] = {1.0};
  for (int k = 0; k < k_max; ++k) {
    const auto& row = t.a[k];
    std::vector<double> next(static_cast<size_t>(k) + 2, 0.0);
    next[0] = 2 * row[0] * (alpha - k) * (2 * alpha - 2 * k - 1);
    for (int j = 1; j <= k + 1; ++j) {
      const double upper = j <= k ? row[j] : 0.0;
      const double c = alpha - k - j;
      next[j] = 2 * upper * c * (2 * alpha - 2 * k - 2 * j - 1) - 4 * row[j - 1] * c * (c + 1);
    }
    t.a[k + 1] = std::move(next);
  }
  return t;
}

double radial_derivative(const DerivativeTable& t, double mu, double r, int ell) {
  if (!(mu > 0)) throw std::invalid_argument("radial_derivative: mu must be positive");
  if (ell < 0) throw std::invalid_argument("radial_derivative: order must be >= 0");
  const int k = ell / 2;
  if (static_cast<size_t>(k) >= t.a.size())
    throw std::invalid_argument("radial_derivative: order exceeds the table");
  const double base = mu * mu + r * r;
  const bool odd = ell % 2;
  double sum = 0;
  for (int j = 0; j <= k; ++j) {
    const double term = t.a[k][j] * std::pow(mu, 2 * j);
    if (odd) {
      sum += (t.alpha - k - j) * term * std::pow(base, t.alpha - k - j - 1);
    } else {
      sum += term * std::pow(base, t.alpha - k - j);
    }
  }
  return odd ? 2 * r * sum : sum;
}

double derivative_ratio(const DerivativeTable& t, double mu, double r, int ell) {
  const double base = mu * mu + r * r;
  return std::abs(radial_derivative(t, mu, r, ell)) / std::pow(base, t.alpha - 0.5 * ell);
}

}  // namespace okg
