#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "okg/radial_symbol.hh"

using namespace okg;

TEST_CASE("coefficient recursion reproduces the hand-derived first rows") {
  const double alpha = 0.5;
  const DerivativeTable t = derivative_table(alpha, 3);
  REQUIRE(t.a.size() == 4);
  CHECK(t.a[0][0] == 1.0);

  CHECK(t.a[1][0] == doctest::Approx(2 * alpha * (2 * alpha - 1)).epsilon(1e-15));
  CHECK(t.a[1][1] == doctest::Approx(-4 * alpha * (alpha - 1)).epsilon(1e-15));

  // Row two from the recursion applied to row one.
  const double a10 = t.a[1][0], a11 = t.a[1][1];
  CHECK(t.a[2][0] == doctest::Approx(2 * a10 * (alpha - 1) * (2 * alpha - 3)).epsilon(1e-14));
  CHECK(t.a[2][1] ==
        doctest::Approx(2 * a11 * (alpha - 2) * (2 * alpha - 5) -
                        4 * a10 * (alpha - 2) * (alpha - 1)).epsilon(1e-14));
  CHECK(t.a[2][2] == doctest::Approx(-4 * a11 * (alpha - 3) * (alpha - 2)).epsilon(1e-14));
}

TEST_CASE("integer powers give polynomial derivatives exactly") {
  // alpha = 2, mu = 1: p(r) = (1 + r^2)^2 with elementary derivatives.
  const DerivativeTable t = derivative_table(2.0, 3);
  for (double r : {0.0, 0.3, 1.0, 2.7}) {
    const double q = 1 + r * r;
    CHECK(radial_derivative(t, 1, r, 0) == doctest::Approx(q * q).epsilon(1e-14));
    CHECK(radial_derivative(t, 1, r, 1) == doctest::Approx(4 * r * q).epsilon(1e-14));
    CHECK(radial_derivative(t, 1, r, 2) == doctest::Approx(4 + 12 * r * r).epsilon(1e-14));
    CHECK(radial_derivative(t, 1, r, 3) == doctest::Approx(24 * r).epsilon(1e-13));
    CHECK(radial_derivative(t, 1, r, 4) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(std::abs(radial_derivative(t, 1, r, 5)) <= 1e-12);
  }
}

TEST_CASE("each order is the centered difference of the previous one") {
  const double h = 1e-4;
  for (const auto& [mu, alpha] : {std::pair{1.0, 0.5}, std::pair{2.0, -1.5}}) {
    const DerivativeTable t = derivative_table(alpha, 4);
    for (int ell = 1; ell <= 7; ++ell) {
      double worst = 0;
      for (double r : {0.1, 0.7, 1.9, 4.2, 8.8}) {
        const double fd = (radial_derivative(t, mu, r + h, ell - 1) -
                           radial_derivative(t, mu, r - h, ell - 1)) /
                          (2 * h);
        const double an = radial_derivative(t, mu, r, ell);
        const double scale = std::max(std::abs(an), std::pow(mu, 2 * alpha - ell));
        worst = std::max(worst, std::abs(fd - an) / scale);
      }
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("the homogeneity ratio never exceeds its coefficient bound") {
  // Triangle inequality on the closed form: even orders are bounded by
  // sum_j |a_{k,j}| since mu^{2j} (mu^2+r^2)^{-j} <= 1, odd orders by
  // 2 sum_j |(alpha-k-j) a_{k,j}| since also r <= sqrt(mu^2+r^2).
  for (const auto& [mu, alpha] : {std::pair{1.0, 0.5}, std::pair{2.0, -1.5}}) {
    const DerivativeTable t = derivative_table(alpha, 3);
    for (int ell = 0; ell <= 7; ++ell) {
      const int k = ell / 2;
      double c_ell = 0;
      for (int j = 0; j <= k; ++j)
        c_ell += ell % 2 == 0 ? std::abs(t.a[k][j])
                              : 2 * std::abs((alpha - k - j) * t.a[k][j]);
      if (c_ell == 0) c_ell = 1;
      for (double r = 0; r <= 10.0; r += 0.05)
        CHECK(derivative_ratio(t, mu, r, ell) <= c_ell * (1 + 1e-12));
    }
  }
}

TEST_CASE("table and evaluation guard their domains") {
  CHECK_THROWS_AS(derivative_table(1.0, -1), std::invalid_argument);
  const DerivativeTable t = derivative_table(1.0, 2);
  CHECK_THROWS_AS(radial_derivative(t, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(radial_derivative(t, 1.0, 1.0, -1), std::invalid_argument);
  CHECK_THROWS_AS(radial_derivative(t, 1.0, 1.0, 6), std::invalid_argument);  // > 2k+1
  CHECK_NOTHROW(radial_derivative(t, 1.0, 1.0, 5));
}
