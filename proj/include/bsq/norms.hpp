#pragma once

#include "bsq/field.hpp"

namespace bsq {

// Analyticity-radius/regularity triple for the weighted norms. Constraints
// here are the configuration-level ones; internal inequality sweeps evaluate
// the raw weighted sums at shifted exponents outside this window.
struct GevreyParams {
  double a = 1.0;     // radius, >= 0
  double sigma = 2.0; // Gevrey index, > 1
  double s = 0.5;     // regularity, in [0, 1.5)

  void validate() const;  // throws std::invalid_argument listing violations
};

struct DissipationParams {
  double alpha = 1.0;  // velocity dissipation order, > 0.5
  double beta = 1.0;   // temperature dissipation order, > 0.5

  void validate() const;
};

// growth exponent q_gamma = 2 gamma / (2 gamma - 1) attached to a
// dissipation order gamma > 1/2
double growth_exponent(double gamma);

// All norms use the calibrated coefficients c_hat = spectral_scale * coeff
// and counting measure over modes; the zero mode contributes nothing.
// Multi-component fields: root-sum-square for the quadratic norms, sum of
// component norms for the weighted-L1 functionals. Every sum is evaluated
// with a fixed pairwise tree, so values are independent of thread count.

// sqrt( sum_k |k|^{2s} e^{2a|k|^{1/sigma}} |c_hat|^2 )
double gevrey_norm(const SpectralField& f, const GevreyParams& p);
// raw version without parameter-window validation (s may be negative)
double weighted_norm(const SpectralField& f, double a, double sigma, double s);

// sqrt( sum_k |k|^{2 delta} |c_hat|^2 )
double sobolev_norm(const SpectralField& f, double delta);

// sum_k e^{a_eff |k|^{1/sigma}} |c_hat|, components added
double weighted_l1_norm(const SpectralField& f, double a_eff, double sigma);
// same with an extra |k|^{2 gamma} dissipation weight
double weighted_l1_dissipation(const SpectralField& f, double a_eff, double sigma, double gamma);

// sum_k |k|^{2s} e^{2a|k|^{1/sigma}} Re(c_hat_f conj(c_hat_g)), components added
double weighted_inner(const SpectralField& f, const SpectralField& g, double a, double sigma,
                      double s);

// root-sum-square of the velocity and temperature norms
double pair_norm(const CoupledState& x, const GevreyParams& p);
double pair_weighted_norm(const CoupledState& x, double a, double sigma, double s);
double l2_pair_norm(const CoupledState& x);
// weighted-L1 of the pair: velocity components + temperature
double pair_weighted_l1(const CoupledState& x, double a_eff, double sigma);

// Shrinking radius ladder, level n >= 1: quadratic norms live at
// a/(sqrt(sigma))^{n-1}, the L1 functionals at a/(sigma (sqrt(sigma))^{n-1}),
// so norm_radius / l1_radius = sigma at every level.
struct LadderRadii {
  double norm_radius = 0.0;
  double l1_radius = 0.0;
};
LadderRadii ladder_radii(double a, double sigma, int n);

}  // namespace bsq
