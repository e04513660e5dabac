#include "okg/transform.hh"

#include <fftw3.h>

#include <mutex>

namespace okg {

namespace {

std::mutex planner_mutex;

// One-shot c2c transform on a scratch copy. FFTW_ESTIMATE planning costs
// microseconds and keeps results independent of measurement noise.
void run_dft(const GridSpec& g, const CArray& in, CArray& out, int sign) {
  out.resize(in.size());
  CArray scratch = in;  // FFTW may clobber the input buffer during planning
  int dims[3] = {g.n, g.n, g.n};
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft(g.d, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
                         reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw: planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
}

}  // namespace

Spectrum forward(const Field& f) {
  validate(f.grid);
  if (f.samples.size() != f.grid.size())
    throw std::invalid_argument("forward: sample count does not match grid");
  Spectrum F;
  F.grid = f.grid;
  run_dft(f.grid, f.samples, F.coeffs, FFTW_FORWARD);
  F.coeffs /= double(f.grid.size());
  return F;
}

Field inverse(const Spectrum& F) {
  validate(F.grid);
  if (F.coeffs.size() != F.grid.size())
    throw std::invalid_argument("inverse: coefficient count does not match grid");
  Field f;
  f.grid = F.grid;
  run_dft(F.grid, F.coeffs, f.samples, FFTW_BACKWARD);
  return f;
}

CArray raw_inverse(const CArray& m, const GridSpec& g) {
  validate(g);
  if (m.size() != g.size()) throw std::invalid_argument("raw_inverse: size mismatch");
  CArray out;
  run_dft(g, m, out, FFTW_BACKWARD);
  return out;
}

}  // namespace okg
