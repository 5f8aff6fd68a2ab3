#include "bsq/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bsq {

namespace {

// One forward/backward plan pair per grid size, created once under a lock.
// FFTW_ESTIMATE keeps plan selection independent of runtime timing so
// outputs are reproducible run to run; execution on caller buffers via
// fftw_execute_dft is thread-safe.
struct PlanPair {
  fftw_plan fwd;
  fftw_plan bwd;
};

PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<fftw_complex> scratch(static_cast<std::size_t>(n) * n * n);
  PlanPair p;
  p.fwd = fftw_plan_dft_3d(n, n, n, scratch.data(), scratch.data(), FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_3d(n, n, n, scratch.data(), scratch.data(), FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.bwd) throw std::runtime_error("transform: fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

fftw_complex* as_fftw(std::span<cplx> s) { return reinterpret_cast<fftw_complex*>(s.data()); }
const fftw_complex* as_fftw(std::span<const cplx> s) {
  return reinterpret_cast<const fftw_complex*>(s.data());
}

}  // namespace

void to_spectral(const FourierGrid& grid, std::span<const cplx> physical, std::span<cplx> modes) {
  if (physical.size() != grid.size() || modes.size() != grid.size()) {
    throw std::invalid_argument("to_spectral: buffer size mismatch");
  }
  PlanPair& p = plans_for(grid.n());
  fftw_execute_dft(p.fwd, const_cast<fftw_complex*>(as_fftw(physical)), as_fftw(modes));
}

void to_physical(const FourierGrid& grid, std::span<const cplx> modes, std::span<cplx> physical) {
  if (physical.size() != grid.size() || modes.size() != grid.size()) {
    throw std::invalid_argument("to_physical: buffer size mismatch");
  }
  PlanPair& p = plans_for(grid.n());
  fftw_execute_dft(p.bwd, const_cast<fftw_complex*>(as_fftw(modes)), as_fftw(physical));
  const double inv = 1.0 / static_cast<double>(grid.size());
  const std::size_t m = grid.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    physical[static_cast<std::size_t>(i)] *= inv;
  }
}

}  // namespace bsq
