#ifndef OKG_FIT_HH
#define OKG_FIT_HH

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace okg {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // rms of the fit residuals
};

// Least-squares line through (x_i, y_i).
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 matching points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = x[static_cast<size_t>(i)];
    a(i, 1) = 1.0;
    b(i) = y[static_cast<size_t>(i)];
  }
  const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(b);
  LineFit f;
  f.slope = sol(0);
  f.intercept = sol(1);
  f.residual = std::sqrt((a * sol - b).squaredNorm() / static_cast<double>(n));
  return f;
}

// Slope of log y against log x. Every y must be positive.
inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("fit_loglog: inputs must be positive");
    lx[i] = std::log2(x[i]);
    ly[i] = std::log2(y[i]);
  }
  return fit_line(lx, ly);
}

struct ExpPowerFit {
  double rate = 0;       // coefficient of lambda itself
  double power = 0;      // coefficient of log2(lambda)
  double intercept = 0;
  double residual = 0;
};

// Model log2 y = rate * x + power * log2 x + intercept. Separates a pure
// exponential component (rate) from a power law (power); needs >= 3 points.
inline ExpPowerFit fit_exp_power(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fit_exp_power: need >= 3 matching points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<size_t>(i)];
    const double yi = y[static_cast<size_t>(i)];
    if (!(xi > 0) || !(yi > 0)) throw std::invalid_argument("fit_exp_power: inputs must be positive");
    a(i, 0) = xi;
    a(i, 1) = std::log2(xi);
    a(i, 2) = 1.0;
    b(i) = std::log2(yi);
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
  ExpPowerFit f;
  f.rate = sol(0);
  f.power = sol(1);
  f.intercept = sol(2);
  f.residual = std::sqrt((a * sol - b).squaredNorm() / static_cast<double>(n));
  return f;
}

}  // namespace okg

#endif
