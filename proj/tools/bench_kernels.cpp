// Timing harness pitting the production kernels (FFT pipeline, OpenMP
// loops, pairwise reductions) against the serial reference implementations
// that the tests use as oracles. Also reports the relative gap between the
// two answers, so a speedup never hides a disagreement.
//
// usage: bench_kernels [n] [repeats]   (defaults: n = 16, repeats = 5)
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bsq/norms.hpp"
#include "bsq/reference.hpp"
#include "bsq/runtime.hpp"
#include "bsq/spectral_ops.hpp"
#include "bsq/transform.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double median_ms(int repeats, F&& work) {
  std::vector<double> times;
  times.reserve(repeats);
  for (int r = 0; r < repeats; ++r) {
    auto begin = clock_type::now();
    work();
    auto end = clock_type::now();
    times.push_back(std::chrono::duration<double, std::milli>(end - begin).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void report(const char* kernel, double serial_ms, double parallel_ms, double rel_gap) {
  std::printf("%-22s %12.3f %12.3f %9.2fx   %.3g\n", kernel, serial_ms, parallel_ms,
              serial_ms / parallel_ms, rel_gap);
}

double rel_gap(const bsq::SpectralField& a, const bsq::SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) {
    num = std::max(num, std::abs(a.raw()[i] - b.raw()[i]));
    den = std::max(den, std::abs(a.raw()[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace

int main(int argc, char** argv) {
  bsq::apply_thread_cap();
  const int n = argc > 1 ? std::atoi(argv[1]) : 16;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  if (n < 8 || n > 256 || n % 2 != 0 || repeats < 1) {
    std::fprintf(stderr, "usage: bench_kernels [n even in 8..256] [repeats >= 1]\n");
    return 2;
  }

  auto grid = bsq::make_grid(n);
  const bsq::CoupledState x = bsq::random_divfree_state(2024, grid, 1.5, 1.0);
  const bsq::SpectralField scalar = bsq::random_scalar_field(7, grid, 1.2, 1.0);

  std::printf("grid n = %d (%zu modes), repeats = %d, threads <= %d\n\n", n, grid->size(),
              repeats, bsq::thread_cap());
  std::printf("%-22s %12s %12s %10s   %s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "rel gap");

  // forward DFT: direct O(N^2) sum vs the FFT pipeline
  {
    std::vector<bsq::cplx> physical(grid->size());
    bsq::to_physical(*grid, scalar.component(0), physical);
    std::vector<bsq::cplx> via_fft(grid->size()), via_dft(grid->size());
    double fft_ms = median_ms(repeats, [&] { bsq::to_spectral(*grid, physical, via_fft); });
    double dft_ms =
        median_ms(repeats, [&] { bsq::reference::dft_forward(*grid, physical, via_dft); });
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < via_fft.size(); ++i) {
      num = std::max(num, std::abs(via_fft[i] - via_dft[i]));
      den = std::max(den, std::abs(via_dft[i]));
    }
    report("forward transform", dft_ms, fft_ms, den > 0.0 ? num / den : num);
  }

  // advection: dense convolution vs dealiased FFT product
  {
    bsq::SpectralField fast, dense;
    double fast_ms =
        median_ms(repeats, [&] { fast = bsq::nonlinear_advection(x.velocity, x.velocity); });
    double dense_ms = median_ms(
        repeats, [&] { dense = bsq::reference::dense_advection(x.velocity, x.velocity); });
    report("advection", dense_ms, fast_ms, rel_gap(dense, fast));
  }

  // weighted norm: left-to-right serial sum vs OpenMP pairwise reduction
  {
    double fast_val = 0.0, serial_val = 0.0;
    double fast_ms =
        median_ms(repeats, [&] { fast_val = bsq::weighted_norm(scalar, 0.8, 2.0, 0.5); });
    double serial_ms = median_ms(
        repeats, [&] { serial_val = bsq::reference::weighted_norm_serial(scalar, 0.8, 2.0, 0.5); });
    report("weighted norm", serial_ms, fast_ms,
           std::abs(fast_val - serial_val) / serial_val);
  }

  // weighted L1: same comparison on the nonquadratic functional
  {
    double fast_val = 0.0, serial_val = 0.0;
    double fast_ms =
        median_ms(repeats, [&] { fast_val = bsq::weighted_l1_norm(scalar, 0.4, 2.0); });
    double serial_ms =
        median_ms(repeats, [&] { serial_val = bsq::reference::weighted_l1_serial(scalar, 0.4, 2.0); });
    report("weighted L1", serial_ms, fast_ms,
           std::abs(fast_val - serial_val) / serial_val);
  }

  return 0;
}
