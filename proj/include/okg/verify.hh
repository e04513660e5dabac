#ifndef OKG_VERIFY_HH
#define OKG_VERIFY_HH

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

/*
 Named verification suites. Each suite bundles probes from the other modules
 into a deterministic pass/fail check with measured quantities attached; the
 id strings are a frozen external interface (reports keyed by them survive
 refactors), so they are treated as opaque keys here.

 Equalities are checked as tolerance-bounded identities, equivalences as
 two-sided ratio bounds with the constants reported, and asymptotic rates as
 fitted exponents inside stated bands. The small tier runs everything at
 desk scale in seconds per suite; the full tier widens grids and parameter
 matrices to the acceptance-level configuration.
*/

namespace okg {

struct VerificationReport {
  std::string id;
  std::string parameters;
  std::vector<std::pair<std::string, double>> measured;
  bool pass = false;
  double wall_ms = 0;
};

enum class Tier { small, full };

// Registered ids in their canonical order.
std::vector<std::string> suite_ids();

// Runs the requested suites (unknown id throws). OKG_THREADS caps the number
// of suites in flight; results always come back in request order and are
// deterministic for a fixed (ids, tier, seed).
std::vector<VerificationReport> run_suite(const std::vector<std::string>& ids, Tier tier,
                                          std::uint64_t seed);

// Derivative-table cross-check for the radial symbol (mu^2 + r^2)^alpha:
// closed-form derivatives up to order 2 k_max + 1 against long-double
// nested central differences with Richardson extrapolation, plus the
// boundedness of |p^(l)| / (mu^2 + r^2)^{alpha - l/2} over the samples.
VerificationReport appendix_a_derivatives(double mu, double alpha, int k_max,
                                          const std::vector<double>& r_samples);

// CSV of every measured constant across the reports; refuses an empty set.
void measured_constants_dump(const std::string& path,
                             const std::vector<VerificationReport>& reports);

}  // namespace okg

#endif
