#pragma once

#include <cstddef>
#include <cstdint>

namespace bsq {

// Worker cap for OpenMP regions. BSQ_THREADS > 0 overrides the OpenMP
// default; read once per process. Numerical results never depend on it:
// accuracy-critical reductions go through pairwise_sum below, which has a
// fixed association tree, and parallel sweeps reduce with max/min or
// integer counts only.
int thread_cap();
void apply_thread_cap();

// Deterministic pairwise summation, fixed recursion tree independent of
// data values and thread count. ~O(eps * log n) relative error.
double pairwise_sum(const double* x, std::size_t n);

// splitmix64; used to derive independent per-sample seeds so randomized
// sweeps can run in any order.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Minimal counter-based generator. Distributions are spelled out here
// (rather than <random> ones) so streams are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, one value per call (no cached spare: keeps the stream
  // position a pure function of call count)
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace bsq
