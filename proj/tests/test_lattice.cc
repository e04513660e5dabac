#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "okg/grid.hh"
#include "okg/transform.hh"

using namespace okg;
using cplx = std::complex<double>;

TEST_CASE("grid validation rejects broken specs") {
  CHECK_THROWS_AS(validate(GridSpec{1, 96, 2 * pi}), std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(validate(GridSpec{1, 2, 2 * pi}), std::invalid_argument);   // too coarse
  CHECK_THROWS_AS(validate(GridSpec{0, 64, 2 * pi}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GridSpec{4, 64, 2 * pi}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GridSpec{1, 64, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(GridSpec{3, 8, 1.0}));
}

TEST_CASE("signed index and slot are inverse maps") {
  const int n = 16;
  for (int slot = 0; slot < n; ++slot) {
    const int k = signed_index(slot, n);
    CHECK(k >= -n / 2);
    CHECK(k < n / 2);
    CHECK(slot_of(k, n) == slot);
  }
  CHECK(signed_index(0, n) == 0);
  CHECK(signed_index(n / 2, n) == -n / 2);
  CHECK(signed_index(n - 1, n) == -1);
}

TEST_CASE("flat index round trips through signed indices in 3d") {
  GridSpec g{3, 8, 5.0};
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
    CHECK(flat_index(k, g) == flat);
    CHECK(signed_indices(flat, g) == k);
  });
}

TEST_CASE("frequency magnitudes carry the 2 pi / L factor") {
  GridSpec g{3, 16, 2 * pi};  // dxi = 1
  const std::array<int, 3> k{1, -2, 3};
  CHECK(l1_frequency(k, g) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(l2_frequency_sq(k, g) == doctest::Approx(14.0).epsilon(1e-15));

  GridSpec h{3, 16, pi};  // dxi = 2
  CHECK(l1_frequency(k, h) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(l2_frequency_sq(k, h) == doctest::Approx(56.0).epsilon(1e-15));

  CHECK(g.nyquist_xi() == doctest::Approx(8.0));
  CHECK(g.max_l1_xi() == doctest::Approx(24.0));
}

TEST_CASE("forward transform normalizes as the mean, so a plane wave is one coefficient") {
  GridSpec g{1, 32, 2 * pi};
  const int k0 = 5;
  Field f = make_field(g);
  for (int i = 0; i < g.n; ++i)
    f.samples[i] = std::exp(cplx(0, k0 * g.dx() * i));
  const Spectrum F = forward(f);
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
    const double want = k[0] == k0 ? 1.0 : 0.0;
    CHECK(std::abs(F.coeffs[flat] - want) < 1e-13);
  });

  // A constant field lands entirely on the zero mode with its own value.
  Field c = make_field(g);
  c.samples.setConstant(cplx(2.5, -1.0));
  const Spectrum C = forward(c);
  CHECK(std::abs(C.coeffs[flat_index({0, 0, 0}, g)] - cplx(2.5, -1.0)) < 1e-14);
}

TEST_CASE("transform round trip and Parseval across dimensions") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (const GridSpec g : {GridSpec{1, 64, 3.0}, GridSpec{2, 16, 2 * pi}, GridSpec{3, 8, 1.5}}) {
    Field f = make_field(g);
    for (std::int64_t i = 0; i < g.size(); ++i) f.samples[i] = cplx(gauss(rng), gauss(rng));
    const Spectrum F = forward(f);
    const Field back = inverse(F);

    double worst = 0;
    for (std::int64_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(back.samples[i] - f.samples[i]));
    CHECK(worst < 1e-12);

    const double a = field_l2(f), b = spectrum_l2(F);
    CHECK(std::abs(a - b) <= 1e-12 * a);

    // The frequency inner product of F with itself is the squared l2 mass.
    CHECK(std::abs(inner(F, F).real() - b * b) <= 1e-12 * b * b);
    CHECK(std::abs(inner(F, F).imag()) <= 1e-14 * b * b);
  }
}

TEST_CASE("discrete Lp norms use the Riemann cell weight") {
  GridSpec g{1, 64, 4.0};
  Field f = make_field(g);
  f.samples.setConstant(cplx(3.0, 0));
  // |f| = 3 everywhere: ||f||_p = 3 * L^{1/p}.
  CHECK(field_lp(f, 2) == doctest::Approx(3 * std::sqrt(4.0)).epsilon(1e-14));
  CHECK(field_lp(f, 1) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(field_lp(f, 4) == doctest::Approx(3 * std::pow(4.0, 0.25)).epsilon(1e-14));
  CHECK(field_linf(f) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("support regions classify lattice modes") {
  GridSpec g{2, 32, 2 * pi};
  const auto mode = [&](int a, int b) { return std::array<int, 3>{a, b, 0}; };

  CHECK(SupportRegion::full_region().contains(mode(-5, 3), g));
  CHECK(SupportRegion::octant().contains(mode(2, 3), g));
  CHECK(SupportRegion::octant().contains(mode(0, 3), g));  // the octant is closed
  CHECK_FALSE(SupportRegion::octant().contains(mode(-2, 3), g));

  const auto gap = SupportRegion::octant_gap(2.5);
  CHECK(gap.contains(mode(2, 1), g));        // |xi|_1 = 3 > 2.5
  CHECK_FALSE(gap.contains(mode(1, 1), g));  // |xi|_1 = 2 below the gap

  const auto ann = SupportRegion::annulus(2.5);
  CHECK(ann.contains(mode(-3, 0), g));
  CHECK_FALSE(ann.contains(mode(1, -1), g));

  const auto ball = SupportRegion::ball(2.5);
  CHECK(ball.contains(mode(1, -1), g));
  CHECK_FALSE(ball.contains(mode(-3, 0), g));
}

TEST_CASE("projection removes exactly the outside mass") {
  GridSpec g{1, 64, 2 * pi};
  Spectrum F = make_spectrum(g);
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
    F.coeffs[flat] = cplx(1.0 / (1 + std::abs(k[0])), 0);
  });
  const auto region = SupportRegion::octant_gap(4.0);
  const Spectrum P = project(F, region);
  CHECK(support_mass_outside(P, region) == 0.0);

  // The reported share is relative: Pythagoras against the kept part.
  const double whole = spectrum_l2(F), kept = spectrum_l2(P);
  const double share = support_mass_outside(F, region);
  CHECK(std::abs(whole * whole - kept * kept - share * share * whole * whole) <=
        1e-12 * whole * whole);
}
