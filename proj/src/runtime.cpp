#include "bsq/runtime.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>

namespace bsq {

int thread_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("BSQ_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) return static_cast<int>(v);
    }
    return omp_get_max_threads();
  }();
  return cap;
}

void apply_thread_cap() { omp_set_num_threads(thread_cap()); }

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  (void)splitmix64(s);
  s ^= 0x517cc1b727220a95ULL * (index + 1);
  return splitmix64(s);
}

double Rng::normal() {
  // rejection-free Box-Muller on two fresh uniforms
  double u1 = uniform();
  while (u1 <= 0x1.0p-60) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace bsq
