#include "okg/verify.hh"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <semaphore>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "okg/blocks.hh"
#include "okg/bump.hh"
#include "okg/exponents.hh"
#include "okg/generators.hh"
#include "okg/grid.hh"
#include "okg/io.hh"
#include "okg/norms.hh"
#include "okg/probes.hh"
#include "okg/propagator.hh"
#include "okg/radial_symbol.hh"
#include "okg/solver.hh"
#include "okg/transform.hh"

namespace okg {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void put(VerificationReport& r, std::string name, double v) {
  r.measured.emplace_back(std::move(name), v);
}

double rel_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

std::vector<double> log_spaced(double a, double b, int m) {
  std::vector<double> t(m);
  for (int i = 0; i < m; ++i) t[i] = a * std::exp(std::log(b / a) * i / (m - 1));
  return t;
}

std::string fmt(double v) { return format_g17(v); }

// ---------------------------------------------------------------- partition

VerificationReport suite_partition(Tier tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "partition";
  const int n = tier == Tier::full ? 128 : 32;
  rep.parameters = "d=1..3 n=" + std::to_string(n) + " L=2pi";
  double worst = 0;
  for (int d = 1; d <= 3; ++d) {
    GridSpec g{d, n, 2 * pi};
    const int jm = j_max(g);
    double dev = 0;
    for_each_mode(g, [&](std::int64_t, const std::array<int, 3>& k) {
      double s = 0;
      for (int j = 0; j <= jm; ++j) s += block_multiplier(j, k, g);
      dev = std::max(dev, std::abs(s - 1.0));
    });
    put(rep, "max_dev_d" + std::to_string(d), dev);
    worst = std::max(worst, dev);
  }
  rep.pass = worst < 1e-12;
  return rep;
}

// ------------------------------------------------------------------- L2.1

VerificationReport suite_l2_1(Tier tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L2.1";
  const int n = tier == Tier::full ? 128 : 64;
  const double sigma = 0.7, s = -0.4;
  rep.parameters = "d=1 n=" + std::to_string(n) + " sigma=0.7 s=-0.4";
  GridSpec g{1, n, 2 * pi};
  double lo = inf, hi = 0;
  for (int rep_i = 0; rep_i < 20; ++rep_i) {
    Spectrum F = random_spectrum(g, rng);
    const double r = besov_norm(F, {sigma, s, 2, 2}) / e_norm(F, sigma, s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  put(rep, "ratio_min", lo);
  put(rep, "ratio_max", hi);
  rep.pass = lo >= 1.0 / 16 && hi <= 16.0;
  return rep;
}

// ------------------------------------------------------------------- L2.2

VerificationReport suite_l2_2(Tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L2.2";
  rep.parameters = "d=1 n=128 src=(-3,0) dst=(5,-0.5) family=e";
  GridSpec g{1, 128, 2 * pi};
  const NormSpec src{-3, 0, 2, 2}, dst{5, -0.5, 2, 2};

  // One lattice mode at a time: the e-family ratio collapses to the weight
  // quotient at that frequency, which has the closed value
  // <k>^8 2^{-k/2}; at k = 8 that is 65^4 / 16.
  const std::vector<int> modes = {0, 1, 2, 4, 8, 16, 23, 32, 48, 63};
  std::vector<double> single(modes.size(), 0);
  double peak = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    Spectrum F = make_spectrum(g);
    for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
      if (k[0] == modes[i]) F.coeffs[flat] = 1.0;
    });
    single[i] = embedding_probe({F}, src, dst, NormFamily::e).constant;
    peak = std::max(peak, single[i]);
  }
  const double frozen = 1115664.0625;  // 65^4 / 16
  const double at8 = single[4];
  put(rep, "ratio_k8", at8);
  put(rep, "ratio_peak", peak);
  put(rep, "ratio_k63", single.back());

  std::vector<Spectrum> fields;
  for (int i = 0; i < 10; ++i)
    fields.push_back(random_spectrum(g, rng, SupportRegion::octant()));
  const double rand_const = embedding_probe(fields, src, dst, NormFamily::e).constant;
  put(rep, "ratio_random", rand_const);

  rep.pass = rel_gap(at8, frozen) <= 1e-12 && std::isfinite(peak) &&
             single.back() < peak / 10 && rand_const <= peak * (1 + 1e-12);
  return rep;
}

// ------------------------------------------------------------------- L2.3

VerificationReport suite_l2_3(Tier tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L2.3";
  const int n = tier == Tier::full ? 128 : 64;
  const int reps = tier == Tier::full ? 50 : 8;
  const double sigma = 0.7, s = -0.4, s2 = 0.3;
  rep.parameters = "d=1 n=" + std::to_string(n) + " reps=" + std::to_string(reps) +
                   " shift=" + fmt(s2 - s) + " pq={1,2,4,inf}^2";
  GridSpec g{1, n, 2 * pi};
  const double grid_pq[4] = {1, 2, 4, inf};
  double worst_besov = 0, worst_triebel = 0, worst_e = 0;
  for (double p : grid_pq)
    for (double q : grid_pq)
      for (int i = 0; i < reps; ++i) {
        Spectrum F = random_spectrum(g, rng);
        Spectrum G = smooth(F, s2 - s);
        const NormSpec at_s{sigma, s, p, q}, at_s2{sigma, s2, p, q};
        worst_besov = std::max(worst_besov, rel_gap(besov_norm(G, at_s), besov_norm(F, at_s2)));
        worst_triebel =
            std::max(worst_triebel, rel_gap(triebel_norm(G, at_s), triebel_norm(F, at_s2)));
        if (p == 2 && q == 2)
          worst_e = std::max(worst_e, rel_gap(e_norm(G, sigma, s), e_norm(F, sigma, s2)));
      }
  put(rep, "worst_rel_besov", worst_besov);
  put(rep, "worst_rel_triebel", worst_triebel);
  put(rep, "worst_rel_e", worst_e);
  rep.pass = worst_besov <= 1e-12 && worst_triebel <= 1e-12 && worst_e <= 1e-12;
  return rep;
}

// ---------------------------------------------------------------- L2.4-ii

VerificationReport suite_l2_4_ii(Tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "L2.4-ii";
  rep.parameters = "d=2 n=32 shell=|xi|_1=1 gap=1 lambda={2,4,8,16}";
  GridSpec g{2, 32, 2 * pi};
  Spectrum f = make_spectrum(g);
  for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
    if ((k[0] == 1 && k[1] == 0) || (k[0] == 0 && k[1] == 1)) f.coeffs[flat] = 1.0;
  });
  const std::vector<double> lambdas = {2, 4, 8, 16};
  const NormSpec specs[3] = {{1, -0.5, 2, 2}, {-1, -0.5, 2, 2}, {1, -0.25, 4, 2}};
  bool pass = true;
  for (int i = 0; i < 3; ++i) {
    const auto pf = scaling_probe(f, specs[i], lambdas, ScalingMode::contract, 1.0);
    const double want = specs[i].sigma - g.d / specs[i].p;
    const std::string tag = std::to_string(i + 1);
    put(rep, "exponent_" + tag, pf.exponent);
    put(rep, "exponent_err_" + tag, std::abs(pf.exponent - want));
    put(rep, "rate_" + tag, pf.rate);
    put(rep, "residual_" + tag, pf.residual);
    pass = pass && std::abs(pf.exponent - want) <= 0.15;
  }
  rep.pass = pass;
  return rep;
}

// --------------------------------------------------------------- L2.4-iii

VerificationReport suite_l2_4_iii(Tier tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "L2.4-iii";
  const int n = tier == Tier::full ? 2048 : 512;
  const int j_lo = 5, j_top = tier == Tier::full ? 9 : 7;
  const double sigma = -1, s = -0.5, rho = 0.8;
  rep.parameters = "d=1 n=" + std::to_string(n) + " blocks=" + std::to_string(j_lo) + ".." +
                   std::to_string(j_top) + " rho=0.8";
  GridSpec g{1, n, 2 * pi};
  Spectrum f = make_spectrum(g);
  // One mode per dyadic block at k_j = 3 * 2^{j-2}, the plateau of its
  // profile, so the decomposition is exact; amplitudes put weighted mass
  // rho^j in block j. Blocks below j_lo stay empty: under the strongest
  // dilation here (lambda = 16) every occupied mode still lands in a
  // homogeneous annular block, and the norm ratio is exactly the power law.
  // Modes that sink into the plateau block would trade their 2^{sigma j}
  // factor for 1, which for sigma < 0 amplifies them and buries the rate.
  for (int j = j_lo; j <= j_top; ++j) {
    const int mode = 3 << (j - 2);
    const double amp =
        std::exp2(-sigma * j) * std::pow(rho, j) * std::exp2(-s * mode) / std::sqrt(g.L);
    for_each_mode(g, [&](std::int64_t flat, const std::array<int, 3>& k) {
      if (k[0] == mode) f.coeffs[flat] = amp;
    });
  }
  const auto pf = scaling_probe(f, {sigma, s, 2, 2}, {2, 4, 8, 16}, ScalingMode::dilate);
  const double want = g.d / 2.0 - sigma;  // d/p - sigma at p = 2
  put(rep, "exponent", pf.exponent);
  put(rep, "exponent_err", std::abs(pf.exponent - want));
  put(rep, "residual", pf.residual);
  rep.pass = std::abs(pf.exponent - want) <= 0.15;
  return rep;
}

// ------------------------------------------------------------------- L2.7

VerificationReport suite_l2_7(Tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L2.7";
  rep.parameters = "d=1 n=64 sigma=0.5 s=-0.3 pq={(4,2),(2,4),(3,3),(inf,2),(2,inf)}";
  GridSpec g{1, 64, 2 * pi};
  const double sigma = 0.5, s = -0.3;
  const std::array<std::array<double, 2>, 5> pq = {
      {{4, 2}, {2, 4}, {3, 3}, {inf, 2}, {2, inf}}};
  double worst_low = 0, worst_high = 0, worst_eq = 0;
  const double slack = 1e-10;
  for (const auto& c : pq) {
    const double p = c[0], q = c[1];
    for (int i = 0; i < 15; ++i) {
      Spectrum F = random_spectrum(g, rng);
      const double tn = triebel_norm(F, {sigma, s, p, q});
      const double blo = besov_norm(F, {sigma, s, p, std::min(p, q)});
      const double bhi = besov_norm(F, {sigma, s, p, std::max(p, q)});
      worst_low = std::max(worst_low, (tn - blo) / blo);
      worst_high = std::max(worst_high, (bhi - tn) / tn);
      if (p == q) worst_eq = std::max(worst_eq, rel_gap(tn, besov_norm(F, {sigma, s, p, q})));
    }
  }
  put(rep, "worst_excess_over_lower_besov", worst_low);
  put(rep, "worst_excess_over_triebel", worst_high);
  put(rep, "worst_pq_equality_gap", worst_eq);
  rep.pass = worst_low <= slack && worst_high <= slack && worst_eq <= slack;
  return rep;
}

// ------------------------------------------------------------------ L2.11

VerificationReport suite_l2_11(Tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L2.11";
  rep.parameters = "d=1 n=128 sigma=0.6 s=-0.4 p=4 q=2";
  GridSpec g{1, 128, 2 * pi};
  const double sigma = 0.6, s = -0.4, p = 4;
  double lo = inf, hi = 0;
  for (int i = 0; i < 15; ++i) {
    Spectrum F = random_spectrum(g, rng);
    const double r = triebel_norm(F, {sigma, s, p, 2}) / bessel_norm(F, sigma, s, p);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  put(rep, "ratio_min", lo);
  put(rep, "ratio_max", hi);
  rep.pass = lo >= 1.0 / 16 && hi <= 16.0;
  return rep;
}

// ------------------------------------------------------------------ L2.13

VerificationReport suite_l2_13(Tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L2.13";
  rep.parameters = "d=1 n=256 T=2 steps=16 gamma=4 p=4 lambda={2,4,8,16}";
  GridSpec g{1, 256, 2 * pi};
  Spectrum u0 = random_spectrum(g, rng, SupportRegion::octant(), 40.0);
  const PropagatorSpec prop{1.0, g};
  TimeSeriesField u{g, uniform_time_grid(0, 2, 16), {}};
  for (double t : u.time.times) u.snapshots.push_back(half_wave(u0, prop, t));

  bool pass = true;
  const double sigmas[2] = {0.5, -0.5};
  for (int i = 0; i < 2; ++i) {
    TimeNormSpec spec{4, {sigmas[i], -0.3, 4, 2}, IndexSet::all()};
    const auto pf = spacetime_scaling_probe(u, spec, {2, 4, 8, 16});
    const std::string tag = i == 0 ? "pos" : "neg";
    put(rep, "exponent_" + tag, pf.exponent);
    put(rep, "reference_" + tag, pf.reference);
    put(rep, "residual_" + tag, pf.residual);
    pass = pass && pf.exponent <= pf.reference + 0.2;
  }
  rep.pass = pass;
  return rep;
}

// ------------------------------------------------------------------- L3.2

VerificationReport suite_l3_2(Tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "L3.2";
  rep.parameters = "d=1 lambda=1 j=0 t=[4,64]x9 plateau t={1e-3,2e-3}";
  const auto scan = decay_scan(1, 1.0, 0, log_spaced(4, 64, 9));
  put(rep, "slope", scan.slope);
  put(rep, "fit_residual", scan.fit_residual);
  put(rep, "wrap_fraction", scan.wrap_fraction);
  put(rep, "multiplier_mass", scan.multiplier_mass);
  double plateau_gap = 0;
  for (double s : scan.sup_norms)
    plateau_gap = std::max(plateau_gap, s / scan.multiplier_mass - 1.0);
  const auto tiny = decay_scan(1, 1.0, 0, {1e-3, 2e-3});
  for (double s : tiny.sup_norms)
    plateau_gap = std::max(plateau_gap, s / tiny.multiplier_mass - 1.0);
  put(rep, "plateau_excess", plateau_gap);
  put(rep, "sup_at_t_min", tiny.sup_norms.front());
  rep.pass = scan.slope >= -0.6 && scan.slope <= -0.4 && plateau_gap <= 1e-12;
  return rep;
}

// ------------------------------------------------------------------- L3.4

VerificationReport suite_l3_4(Tier tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "L3.4";
  struct Case {
    int d;
    double lambda;
    int j;
    bool coarse;  // long coarse torus: d=2 top block cannot double n
  };
  std::vector<Case> cases;
  if (tier == Tier::full) {
    for (double lam : {1.0, 4.0, 16.0})
      for (int j : {0, 2, 5}) cases.push_back({1, lam, j, false});
    cases.push_back({2, 8.0, 1, false});
    cases.push_back({2, 8.0, 5, true});
  } else {
    cases.push_back({1, 4.0, 0, false});
    cases.push_back({1, 4.0, 5, false});
    cases.push_back({2, 8.0, 1, false});
  }
  rep.parameters = tier == Tier::full
                       ? "d=1 lambda={1,4,16} j={0,2,5}; d=2 lambda=8 j={1,5}; t=[4,64]x9"
                       : "d=1 lambda=4 j={0,5}; d=2 lambda=8 j=1; t=[4,64]x9";
  const auto times = log_spaced(4, 64, 9);
  bool pass = true;
  for (const auto& c : cases) {
    DecayGridPolicy pol;
    if (c.coarse) {
      pol.pad = 70;
      pol.radius_factor = 1.2;
    }
    const auto scan = decay_scan(c.d, c.lambda, c.j, times, pol);
    double lo, hi;
    if (c.d == 1) {
      lo = -0.6;
      hi = scan.low_regime ? -0.4 : 0.1;
    } else {
      lo = -1.1;
      hi = scan.low_regime ? -0.9 : -0.4;
    }
    std::ostringstream tag;
    tag << "slope_d" << c.d << "_lam" << c.lambda << "_j" << c.j;
    put(rep, tag.str(), scan.slope);
    pass = pass && scan.slope >= lo && scan.slope <= hi;
  }
  rep.pass = pass;
  return rep;
}

// ------------------------------------------------------------------- L3.5

VerificationReport suite_l3_5(Tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "L3.5";
  rep.parameters = "1000-point sweep d={1,2,3} p=[2,20]+inf theta=[0,1] + spot values";
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + i % 3;
    const double theta = (i % 8) / 7.0;
    const double p = (i % 125 == 124) ? inf : 2 + 18.0 * (i % 125) / 124.0;
    const auto t = strichartz_exponents(d, p, theta);
    const double inv_p = std::isinf(p) ? 0 : 1 / p;
    worst = std::max(worst, std::abs(t.delta - (0.5 - inv_p)));
    worst = std::max(worst, std::abs(2 / t.gamma - (d - 1 + theta) * t.delta));
    worst = std::max(worst, std::abs(2 * t.sigma_strich - (d + 1 + theta) * t.delta));
    worst = std::max(worst, std::abs(2 / t.gamma0 - d * t.delta));
    worst = std::max(worst, std::abs(2 * t.sigma0 - (d + 2) * t.delta));
    worst = std::max(worst, std::abs(2 / t.gamma1 - (d - 1) * t.delta));
    worst = std::max(worst, std::abs(2 * t.sigma1 - (d + 1) * t.delta));
  }
  put(rep, "worst_relation_residual", worst);

  // Spot values on the endpoint line p = 2(d+1)/(d-1) and the d = 2 sample.
  const auto spot = strichartz_exponents(2, 4, 1);
  const double err_spot = std::max({std::abs(spot.delta - 0.25), std::abs(spot.gamma - 4.0),
                                    std::abs(spot.sigma_strich - 0.5)});
  put(rep, "spot_d2_p4_err", err_spot);
  double err_line = 0;
  for (int d : {2, 3}) {
    const double p = 2.0 * (d + 1) / (d - 1);
    const auto t = strichartz_exponents(d, p, 0);
    err_line = std::max(err_line, std::abs(t.delta - 1.0 / (d + 1)));
    err_line = std::max(err_line, std::abs(t.sigma1 - 0.5));
  }
  put(rep, "spot_endpoint_err", err_line);

  // gamma(theta, r) = r on the half-regularity line.
  double err_gamma_r = 0;
  for (double theta : {0.25, 0.5, 1.0}) {
    for (int d : {2, 3}) {
      const double r = half_regularity_exponent(d, theta);
      const auto t = strichartz_exponents(d, r, theta);
      err_gamma_r = std::max(err_gamma_r, std::abs(t.gamma - r) / r);
    }
  }
  put(rep, "spot_gamma_eq_r_err", err_gamma_r);

  // theorem_parameters coverage: known pairs and the rejected regions.
  double err_tp = 0;
  {
    const auto a = theorem_parameters(2, 2.0);
    err_tp = std::max({err_tp, std::abs(a.p - 4.0), std::abs(a.theta - 1.0)});
    const auto b = theorem_parameters(3, 2.0);
    err_tp = std::max({err_tp, std::abs(b.p - 4.0), std::abs(b.theta - 0.0)});
    const auto c = theorem_parameters(1, 4.0);
    err_tp = std::max({err_tp, std::abs(c.p - 6.0), std::abs(c.theta - 1.0)});
    const auto e = theorem_parameters(2, 100.0);
    err_tp = std::max({err_tp, std::abs(e.p - 6.0), std::abs(e.theta - 0.0)});
  }
  bool rejects = false;
  try {
    theorem_parameters(1, 2.0);
  } catch (const std::domain_error&) {
    try {
      theorem_parameters(2, 0.5);
    } catch (const std::domain_error&) {
      rejects = true;
    }
  }
  put(rep, "spot_theorem_parameters_err", err_tp);
  put(rep, "rejects_out_of_range", rejects ? 1.0 : 0.0);

  rep.pass = worst <= 1e-14 && err_spot <= 1e-14 && err_line <= 1e-14 &&
             err_gamma_r <= 1e-12 && err_tp <= 1e-12 && rejects;
  return rep;
}

// ------------------------------------------------------------------- L4.1

VerificationReport suite_l4_1(Tier, std::mt19937_64& rng) {
  VerificationReport rep;
  rep.id = "L4.1";
  rep.parameters = "d={1,2} alpha={1,2,3} n=64 s=-0.4 reps=3";
  const double s = -0.4;
  double worst = 0;
  for (int d = 1; d <= 2; ++d) {
    GridSpec g{d, 64, 2 * pi};
    for (int alpha = 1; alpha <= 3; ++alpha) {
      const int K = (g.n / 2 - 1) / (1 + alpha);
      for (int r = 0; r < 3; ++r) {
        std::vector<Spectrum> factors;
        for (int i = 0; i <= alpha; ++i)
          factors.push_back(
              random_spectrum(g, rng, SupportRegion::octant(), K * g.dxi()));

        auto product = [&](const std::vector<Spectrum>& fs) {
          Field prod = inverse(fs[0]);
          for (std::size_t i = 1; i < fs.size(); ++i)
            prod.samples *= inverse(fs[i]).samples;
          return forward(prod);
        };

        Spectrum lhs = smooth(product(factors), s);
        std::vector<Spectrum> smoothed;
        for (const auto& f : factors) smoothed.push_back(smooth(f, s));
        Spectrum rhs = product(smoothed);

        Spectrum diff = lhs;
        diff.coeffs -= rhs.coeffs;
        worst = std::max(worst, spectrum_l2(diff) / std::max(spectrum_l2(lhs), 1e-300));
      }
    }
  }
  put(rep, "worst_rel_err", worst);
  rep.pass = worst <= 1e-10;
  return rep;
}

// ------------------------------------------------------------------- L5.1

VerificationReport suite_l5_1(Tier tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "L5.1";
  const bool full = tier == Tier::full;
  const int n = full ? 4096 : 1024;
  const double L = full ? 128 * pi : 32 * pi;
  const std::vector<int> ks = full ? std::vector<int>{4, 8, 16} : std::vector<int>{4, 8};
  rep.parameters = "d=1 n=" + std::to_string(n) + " L=" + fmt(L) + " sigma=1 b={-8,-16}";
  GridSpec g{1, n, L};
  double c_min = inf, l2_lo = inf, l2_hi = 0;
  for (int k : ks) {
    const Spectrum phi = gen_concentrating(g, k);
    const double l2 = spectrum_l2(phi);
    l2_lo = std::min(l2_lo, l2);
    l2_hi = std::max(l2_hi, l2);
    for (double b : {-8.0, -16.0}) {
      const double ratio = e_norm(phi, 1.0, b) / (std::exp2(b / k) * l2);
      c_min = std::min(c_min, ratio);
      put(rep, "ratio_k" + std::to_string(k) + "_b" + std::to_string(int(-b)), ratio);
    }
  }
  put(rep, "c_min", c_min);
  put(rep, "l2_spread", l2_hi / l2_lo);
  rep.pass = c_min >= 0.9 && l2_hi / l2_lo <= 1.3;
  return rep;
}

// --------------------------------------------------------------- sp-series

VerificationReport suite_sp_series(Tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "sp-series";
  rep.parameters = "d=1 L=2pi n=256->512 s=-0.5 rate=0.25 eps=1";
  const double s = -0.5, rate = 0.25;
  auto norms_at = [&](int n) {
    GridSpec g{1, n, 2 * pi};
    double tail = 0;
    const Spectrum F = gen_sokhotski_plemelj(g, 3, 1.0, rate, s, &tail);
    return std::array<double, 3>{e_norm(F, 0, s), sobolev_norm(F, 0), tail};
  };
  const auto a = norms_at(256);
  const auto b = norms_at(512);
  const double e_drift = rel_gap(a[0], b[0]);
  const double h0_growth = b[1] / a[1];
  put(rep, "e_norm_coarse", a[0]);
  put(rep, "e_norm_fine", b[0]);
  put(rep, "e_drift", e_drift);
  put(rep, "h0_growth", h0_growth);
  put(rep, "tail_fraction_fine", b[2]);
  rep.pass = e_drift <= 0.01 && h0_growth >= 2.0;
  return rep;
}

// ------------------------------------------------------------------- P3.6

VerificationReport suite_p3_6(Tier tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "P3.6";
  const bool full = tier == Tier::full;
  rep.parameters = "d=1 L=32pi lambda=4 p=6 theta=1 window=32 n=512" +
                   std::string(full ? "->1024" : "");
  const double L = 32 * pi, lambda = 4, sigma = 0.5, s = -0.3, window = 32;
  const auto table = strichartz_exponents(1, 6, 1);

  auto sample_at = [&](int n) {
    GridSpec g{1, n, L};
    const PropagatorSpec prop{lambda, g};
    const Spectrum low = gen_gaussian_octant(g, {2, 0, 0}, 0.3, 1.0);
    const Spectrum high = gen_gaussian_octant(g, {8, 0, 0}, 1.0, 1.0);
    const double r_low =
        strichartz_sample({low}, prop, table, IndexSet::zlambda(lambda), sigma, s, window, 64)
            .ratio;
    const double r_high =
        strichartz_sample({high}, prop, table, IndexSet::zlambda_c(lambda), sigma, s, window, 64)
            .ratio;
    return std::array<double, 2>{r_low, r_high};
  };

  const auto coarse = sample_at(512);
  put(rep, "ratio_low_branch", coarse[0]);
  put(rep, "ratio_high_branch", coarse[1]);
  bool pass = std::isfinite(coarse[0]) && coarse[0] > 0 && std::isfinite(coarse[1]) &&
              coarse[1] > 0;
  if (full) {
    const auto fine = sample_at(1024);
    const double drift_low = std::abs(fine[0] / coarse[0] - 1);
    const double drift_high = std::abs(fine[1] / coarse[1] - 1);
    put(rep, "refinement_drift_low", drift_low);
    put(rep, "refinement_drift_high", drift_high);
    pass = pass && drift_low <= 0.2 && drift_high <= 0.2;
  }
  rep.pass = pass;
  return rep;
}

// ------------------------------------------------------------ picard-small

VerificationReport suite_picard_small(Tier, std::mt19937_64&) {
  VerificationReport rep;
  rep.id = "picard-small";
  rep.parameters = "d=1 n=256 alpha=2 lambda=4 T=1 nt=32 amp=1e-2";
  GridSpec g{1, 256, 2 * pi};
  const Spectrum u0 = gen_gaussian_octant(g, {5, 0, 0}, 0.75, 1e-2);
  const Spectrum u1 = make_spectrum(g);
  NonlinearitySpec nl;
  nl.kind = NonlinearitySpec::Kind::power;
  nl.alpha = 2;
  SolverConfig cfg;
  cfg.lambda = 4;
  cfg.T = 1;
  cfg.n_t = 32;
  cfg.grid = g;
  cfg.picard_tol = 1e-10;
  cfg.max_iter = 15;
  cfg.monitor = {1.0, -1.0};
  const auto solved = picard_solve(u0, u1, nl, cfg);
  const IterationReport& it = solved.second;
  const double leak = it.leakage.empty() ? 0 : *std::max_element(it.leakage.begin(), it.leakage.end());
  put(rep, "iterations", it.iterations);
  put(rep, "final_residual", it.final_residual);
  put(rep, "contraction", it.contraction);
  put(rep, "worst_leakage", leak);
  rep.pass = it.converged && it.iterations <= 8 && leak < 1e-10 &&
             it.final_residual <= 2 * cfg.picard_tol;
  return rep;
}

// -------------------------------------------------------------------- A.1

VerificationReport suite_a_1(Tier, std::mt19937_64&) {
  const std::vector<double> samples = {0, 0.3, 1, 2.5, 4, 7, 10};
  const auto a = appendix_a_derivatives(1.0, 0.5, 3, samples);
  const auto b = appendix_a_derivatives(2.0, -1.5, 3, samples);
  VerificationReport rep;
  rep.id = "A.1";
  rep.parameters = "(mu,alpha)={(1,0.5),(2,-1.5)} k_max=3 r=[0,10]";
  for (const auto& [name, v] : a.measured) put(rep, name + "_a", v);
  for (const auto& [name, v] : b.measured) put(rep, name + "_b", v);
  rep.pass = a.pass && b.pass;
  return rep;
}

// ---------------------------------------------------------------- registry

using SuiteFn = VerificationReport (*)(Tier, std::mt19937_64&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"partition", suite_partition}, {"L2.1", suite_l2_1},
      {"L2.2", suite_l2_2},           {"L2.3", suite_l2_3},
      {"L2.4-ii", suite_l2_4_ii},     {"L2.4-iii", suite_l2_4_iii},
      {"L2.7", suite_l2_7},           {"L2.11", suite_l2_11},
      {"L2.13", suite_l2_13},         {"L3.2", suite_l3_2},
      {"L3.4", suite_l3_4},           {"L3.5", suite_l3_5},
      {"L4.1", suite_l4_1},           {"L5.1", suite_l5_1},
      {"sp-series", suite_sp_series}, {"P3.6", suite_p3_6},
      {"picard-small", suite_picard_small}, {"A.1", suite_a_1},
  };
  return reg;
}

SuiteFn lookup(const std::string& id) {
  for (const auto& [name, fn] : registry())
    if (name == id) return fn;
  throw std::invalid_argument("run_suite: unknown suite id: " + id);
}

int thread_cap() {
  if (const char* env = std::getenv("OKG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return int(std::min(v, 64L));
  }
  return 1;
}

}  // namespace

std::vector<std::string> suite_ids() {
  std::vector<std::string> ids;
  for (const auto& [name, fn] : registry()) ids.push_back(name);
  return ids;
}

std::vector<VerificationReport> run_suite(const std::vector<std::string>& ids, Tier tier,
                                          std::uint64_t seed) {
  std::vector<SuiteFn> fns;
  for (const auto& id : ids) fns.push_back(lookup(id));

  // Suites are independent; the gate only caps how many run at once. Each
  // one draws from its own id-keyed engine, so the report stream does not
  // depend on scheduling. Futures are all joined before the gate dies.
  std::counting_semaphore<64> gate(thread_cap());
  std::vector<std::future<VerificationReport>> futs;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    futs.push_back(std::async(std::launch::async, [&, i] {
      gate.acquire();
      struct Release {
        std::counting_semaphore<64>& g;
        ~Release() { g.release(); }
      } release{gate};
      Timer timer;
      std::mt19937_64 rng(seed ^ fnv1a(ids[i]));
      VerificationReport rep = fns[i](tier, rng);
      rep.wall_ms = timer.ms();
      return rep;
    }));
  }
  std::vector<VerificationReport> out;
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

VerificationReport appendix_a_derivatives(double mu, double alpha, int k_max,
                                          const std::vector<double>& r_samples) {
  if (!(mu > 0)) throw std::invalid_argument("appendix_a_derivatives: mu must be positive");
  if (r_samples.empty())
    throw std::invalid_argument("appendix_a_derivatives: need at least one sample");
  Timer timer;
  VerificationReport rep;
  rep.id = "A.1";
  rep.parameters = "mu=" + fmt(mu) + " alpha=" + fmt(alpha) + " k_max=" + std::to_string(k_max);

  const auto table = derivative_table(alpha, k_max);
  const long double mu2 = static_cast<long double>(mu) * mu;
  const long double al = alpha;
  const auto p = [&](long double x) { return powl(mu2 + x * x, al); };

  // Nested 5-point first-derivative stencils in long double, sharpened by one
  // Richardson step; the composite is O(h^6) accurate, which leaves both the
  // truncation and the roundoff amplification of the order-7 composition
  // comfortably below the 1e-6 gate at this h.
  std::function<long double(int, long double, long double)> D =
      [&](int ell, long double x, long double h) -> long double {
    if (ell == 0) return p(x);
    return (-D(ell - 1, x + 2 * h, h) + 8 * D(ell - 1, x + h, h) - 8 * D(ell - 1, x - h, h) +
            D(ell - 1, x - 2 * h, h)) /
           (12 * h);
  };
  const long double h = 0.03L;

  const int ell_top = 2 * k_max + 1;
  double worst_rel = 0, ratio_sup = 0, bound_margin = 0;
  for (int ell = 0; ell <= ell_top; ++ell) {
    // Admissible constant for the uniform ratio bound: drop mu^{2j} against
    // (mu^2+r^2)^j and |2r| against 2 sqrt(mu^2+r^2), leaving a coefficient
    // l1 sum that no r can exceed.
    const int k = ell / 2;
    double c_ell = 0;
    for (int jj = 0; jj <= k; ++jj) {
      const double coef = table.a[k][jj];
      c_ell += ell % 2 == 0 ? std::abs(coef) : 2 * std::abs((alpha - k - jj) * coef);
    }
    if (c_ell == 0) c_ell = 1;
    double scale = 0;
    std::vector<double> closed(r_samples.size());
    for (std::size_t i = 0; i < r_samples.size(); ++i) {
      closed[i] = radial_derivative(table, mu, r_samples[i], ell);
      scale = std::max(scale, std::abs(closed[i]));
    }
    if (scale == 0) scale = 1;
    for (std::size_t i = 0; i < r_samples.size(); ++i) {
      const long double x = r_samples[i];
      const long double fd =
          ell == 0 ? p(x) : (16 * D(ell, x, h / 2) - D(ell, x, h)) / 15;
      worst_rel = std::max(worst_rel, double(std::abs(closed[i] - double(fd))) / scale);
      const double ratio = derivative_ratio(table, mu, r_samples[i], ell);
      ratio_sup = std::max(ratio_sup, ratio);
      bound_margin = std::max(bound_margin, ratio / c_ell);
    }
  }
  put(rep, "max_rel_err", worst_rel);
  put(rep, "ratio_sup", ratio_sup);
  put(rep, "bound_margin", bound_margin);
  rep.pass = worst_rel <= 1e-6 && bound_margin <= 1 + 1e-12;
  rep.wall_ms = timer.ms();
  return rep;
}

void measured_constants_dump(const std::string& path,
                             const std::vector<VerificationReport>& reports) {
  if (reports.empty())
    throw std::invalid_argument("measured_constants_dump: no reports to write");
  std::string csv = "id,parameters,name,value\n";
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  };
  for (const auto& r : reports)
    for (const auto& [name, v] : r.measured)
      csv += quote(r.id) + "," + quote(r.parameters) + "," + quote(name) + "," + fmt(v) + "\n";
  atomic_write(path, csv);
}

}  // namespace okg
