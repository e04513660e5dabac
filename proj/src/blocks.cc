#include "okg/blocks.hh"

#include "okg/transform.hh"

namespace okg {

double block_multiplier(int j, const std::array<int, 3>& k, const GridSpec& g) {
  const double r = l1_frequency(k, g);
  return j == 0 ? psi_profile(r) : phi_j_profile(j, r);
}

Spectrum block(const Spectrum& F, int j) {
  if (j < 0) throw std::invalid_argument("block: j must be >= 0");
  Spectrum out = F;
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    out.coeffs[flat] *= block_multiplier(j, k, F.grid);
  });
  return out;
}

std::vector<Spectrum> block_decomposition(const Spectrum& F) {
  const int J = j_max(F.grid);
  std::vector<Spectrum> blocks;
  blocks.reserve(J + 1);
  for (int j = 0; j <= J; ++j) blocks.push_back(make_spectrum(F.grid));
  for_each_mode(F.grid, [&](std::int64_t flat, const std::array<int, 3>& k) {
    const double r = l1_frequency(k, F.grid);
    const cxd c = F.coeffs[flat];
    if (c == cxd(0, 0)) return;
    blocks[0].coeffs[flat] = c * psi_profile(r);
    for (int j = 1; j <= J; ++j) {
      if (r > block_inner_radius(j) && r < block_outer_radius(j))
        blocks[j].coeffs[flat] = c * phi_j_profile(j, r);
    }
  });
  return blocks;
}

double kernel_l1_estimate(const CArray& m, const GridSpec& g) {
  const CArray kernel = raw_inverse(m, g);
  // (L/n)^d quadrature against the (1/L^d)-normalized kernel: the L and 1/L
  // cancel to a plain 1/n^d average of |raw inverse|.
  return kernel.abs().sum() / double(g.size());
}

}  // namespace okg
