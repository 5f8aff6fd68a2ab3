#pragma once

#include <optional>
#include <vector>

#include "bsq/integrator.hpp"
#include "bsq/norms.hpp"

namespace bsq {

// Post-processing of norm series against the finite-horizon lower bounds:
// radius-ladder functionals, the divergent-integral criterion, envelope and
// double-exponential curves, and the horizon extrapolation. Everything here
// is pure arithmetic over immutable inputs.

// W^{q_alpha} + W^{q_beta} with W the pair weighted-L1 functional at the
// level-n ladder L1 radius. Requires alpha, beta >= 1.
double blowup_functional(const CoupledState& x, const GevreyParams& p, const DissipationParams& d,
                         int n);

// (e^{C (tstar - t)} - 1)^{-1} for 0 <= t < tstar, C > 0
double envelope(double t, double tstar, double c);

// trapezoid integral of the level-n blow-up functional from t to the last
// recorded time, interpolating linearly inside the segment containing t
double integral_criterion(const NormSeries& series, double t, int n, const DissipationParams& d);

struct CorollaryExponents {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double sigma0 = 0.0;
};

// sigma0 = floor(2 sigma mu) / 2, rho1 = (1 - 2 alpha)(2(s sigma + sigma0) + 1)
// / (6 alpha sigma), rho2 = (1 - 2 alpha) / (3 alpha sigma). Requires the
// equal-order regime alpha >= 1 and mu > 3/2; both exponents come out
// strictly negative there.
CorollaryExponents corollary_exponents(const GevreyParams& p, double alpha, double mu);

// (e^{C1 (tstar - t)} - 1)^{rho1} exp(C2 (e^{C1 (tstar - t)} - 1)^{rho2});
// diverges as t -> tstar since rho1, rho2 < 0
double corollary_bound(double t, double tstar, double c1, double c2, double rho1, double rho2);

// Least-squares horizon extrapolation: fit a line to pair_norm^{-q_alpha}
// over the final quarter of the series and report its zero crossing.
// Absent when the series is short (< 8 records), not growing, or the
// crossing does not land in (t_last, t_last + 10 span].
std::optional<double> estimate_tstar(const NormSeries& series, const DissipationParams& d);

// Cauchy-Schwarz constant K linking ladder levels: the level-n L1 functional
// is bounded by 2 K times the level-(n+1) quadratic pair norm, with
// K^2 = sum over retained k != 0 of |k|^{-2s} e^{2 (r1 - r2) |k|^{1/sigma}},
// r1 the level-n L1 radius and r2 the level-(n+1) norm radius.
double ladder_descent_constant(const FourierGrid& grid, const GevreyParams& p, int n);

// max(q_alpha, q_beta) times the trained l1_growth constant; the default
// envelope rate when no override is configured
double default_envelope_constant(const GevreyParams& p, const DissipationParams& d,
                                 const GridPtr& grid, int samples, std::uint64_t seed,
                                 double safety);

struct CorollaryCurve {
  double c1 = 0.0;  // envelope rate reused as the inner exponential rate
  double c2 = 0.0;  // anchored so the curve meets the series at the fit window start
  CorollaryExponents exponents;
  std::vector<double> bound;  // one value per record
};

struct MonitorOptions {
  double tstar = 0.0;       // > 0: user-supplied horizon; 0: extrapolate
  double envelope_c = 0.0;  // required > 0 (see default_envelope_constant)
  double mu = 1.6;          // corollary auxiliary exponent, > 3/2
};

struct BlowupDiagnostics {
  std::optional<double> tstar;  // absent when no horizon is known or extractable
  bool tstar_user = false;
  double envelope_c = 0.0;
  NormSeries series;
  // [level-1][record]: ladder blow-up functionals and their running integrals
  std::vector<std::vector<double>> functionals;
  std::vector<std::vector<double>> integral_values;
  std::vector<double> envelope_values;      // empty without a horizon
  std::optional<CorollaryCurve> corollary;  // present only for alpha = beta >= 1 with a horizon
};

// Assembles the full report from a recorded series. The corollary curve is
// anchored at the first record of the fit window (the final quarter) and
// omitted when the anchor gives a nonpositive C2.
BlowupDiagnostics diagnose(const NormSeries& series, const GevreyParams& p,
                           const DissipationParams& d, const MonitorOptions& opt);

}  // namespace bsq
