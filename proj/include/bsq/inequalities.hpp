#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/norms.hpp"

namespace bsq {

// One evaluated inequality instance: both sides, their ratio, and a verdict
// with 1e-9 relative slack. ratio is 0 when both sides vanish and +inf when
// only the right side does; holds = lhs <= rhs * (1 + 1e-9).
struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
  std::string witness;
};

// Empirical stand-in for a constant the analysis only asserts to exist:
// the largest constant-free ratio seen over a seeded sample sweep, times a
// safety margin. Deterministic in (which, parameters, grid, samples, seed).
struct ConstantEstimate {
  std::string which;
  double value = 0.0;      // max_ratio * safety
  double max_ratio = 0.0;  // sharpest ratio observed
  long samples = 0;
  std::uint64_t seed = 0;
  double safety = 1.0;
};

// lambda^p e^{-b lambda} <= p^p (e b)^{-p}; equality at lambda = p/b.
InequalityReport check_pointwise_decay(double p, double b, double lambda);

// |fg|_s <= c |f|_s |g|_s for scalar fields, product by the dealiased
// physical-space pipeline. Needs a > 0 and s in [0, 3/2).
InequalityReport check_product_estimate(const SpectralField& f, const SpectralField& g,
                                        const GevreyParams& p, const ConstantEstimate& c);

// |f|_{s+1} <= |f|_s^{1-1/theta} |f|_{s+theta}^{1/theta}; the constant is
// exactly 1 (single-sum Hoelder), so no estimate is involved.
InequalityReport check_interpolation(const SpectralField& f, const GevreyParams& p, double theta);

// |fg|_{s+1} <= c [..] for s in [-1, 3/2), alpha, beta >= 1. The l1_weighted
// variant pairs each factor's reduced-radius (a/sigma) weighted-L1 with the
// other factor's interpolation bracket; the pure_norm variant uses plain
// norms throughout.
enum class ProductInterpVariant { l1_weighted, pure_norm };
InequalityReport check_product_interp(const SpectralField& f, const SpectralField& g,
                                      const GevreyParams& p, const DissipationParams& d,
                                      ProductInterpVariant variant, const ConstantEstimate& c);

// e^{a|xi|^{1/sigma}} <= e^{a|xi-eta|^{1/sigma}} e^{a|eta|^{1/sigma}}.
InequalityReport check_exponent_triangle(const std::array<double, 3>& xi,
                                         const std::array<double, 3>& eta, double a, double sigma);

// |f_hat|_{L1} <= c |f|_{L2}^{1-3/(2 delta)} |f|_{H^delta}^{3/(2 delta)} for
// delta > 3/2 (unweighted L1 of the coefficients).
InequalityReport check_l1_interpolation(const SpectralField& f, double delta,
                                        const ConstantEstimate& c);

// |f|_{H^delta} <= c |f|_{H^s_{a,sigma}} for delta >= 3/2; finite on the
// lattice because the exponential weight dominates every polynomial.
InequalityReport check_embedding(const SpectralField& f, const GevreyParams& p, double delta,
                                 const ConstantEstimate& c);

// Known estimator ids:
//   product            |fg|_s / (|f|_s |g|_s)
//   product_interp_l1  l1_weighted bracket of the product-interpolation bound
//   product_interp_norm  pure_norm bracket of the same bound
//   l1_interp          coefficient-L1 interpolation at delta = 2
//   embedding          Sobolev embedding at delta = 2
//   bilinear_b         pair_norm(B(x,y)(t)) / [(t^{1-1/(2a)}+t^{1-1/(2b)}) |x| |y|]
//   linear_l           pair_norm(L(x)(t)) / (t |x|)
//   l1_growth          weighted-L1 sources over the Gronwall bracket
//   gevrey_growth      energy-identity sources over the Gronwall bracket
// Sweeps are seeded per sample, parallel-safe, and reproducible bit for bit.
ConstantEstimate estimate_constant(const std::string& which, const GevreyParams& p,
                                   const DissipationParams& d, const GridPtr& grid, long samples,
                                   std::uint64_t seed, double safety);
const std::vector<std::string>& estimator_ids();

}  // namespace bsq
