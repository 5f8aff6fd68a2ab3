#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsq/norms.hpp"
#include "bsq/semigroup.hpp"

namespace bsq {

// Thrown when a step produces (or receives) nonfinite coefficients. evolve
// catches it and turns it into an abort-and-persist outcome.
struct NumericalBlowup : std::runtime_error {
  explicit NumericalBlowup(const std::string& what) : std::runtime_error(what) {}
};

// One monitored sample along a run. Ladder vectors are indexed by level
// n = 1..ladder_nmax with the radii from ladder_radii.
struct NormRecord {
  double time = 0.0;
  double l2_pair = 0.0;
  std::vector<double> gevrey_pair;  // pair norm at radius a/(sqrt(sigma))^{n-1}
  std::vector<double> weighted_l1;  // pair L1 at radius a/(sigma (sqrt(sigma))^{n-1})
  double u_dissipation = 0.0;       // |u|_{s+alpha} at the base radius
  double th_dissipation = 0.0;      // |theta|_{s+beta} at the base radius
  double u_l2_dissipation = 0.0;    // plain |(-Delta)^{alpha/2} u|_{L2}
  double th_l2_dissipation = 0.0;   // plain |(-Delta)^{beta/2} theta|_{L2}
};

struct NormSeries {
  int ladder_nmax = 0;
  std::vector<NormRecord> records;
};

NormRecord sample_norms(const CoupledState& x, const GevreyParams& p, const DissipationParams& d,
                        int ladder_nmax);

// explicit-nonlinearity CFL margin: 0.25 / max over retained modes of
// max(|k|^{2 alpha}, |k|^{2 beta})
double default_dt(const FourierGrid& grid, const DissipationParams& d);

// One ETD2 step (exponential time differencing, order 2): the fractional
// dissipation is integrated exactly per mode, the advection and buoyancy
// forcing enter through the exact exponential quadrature weights with a
// predictor-corrector closure, the velocity forcing is Leray-projected, and
// the output is dealiased and mean-free. A zero nonlinearity makes the step
// coincide with the semigroup bitwise.
CoupledState etd_step(const CoupledState& x, double dt, const DissipationParams& d);

struct EvolveResult {
  CoupledState final_state;  // last finite state reached
  NormSeries series;
  bool blowup_candidate = false;
  std::string abort_reason;  // empty when the run reached t_end
};

// invoked with the initial state (index 0) and after every accepted step
using StepCallback = std::function<void(const CoupledState&, long)>;

// Marches x0 to t_end on the uniform dt partition (plus one shorter final
// step when dt does not divide t_end), recording a NormRecord per node.
// Aborts (never throws) on nonfinite coefficients or a base-radius pair norm
// above 1e12, flagging the run as a blow-up candidate and keeping the series
// collected so far.
EvolveResult evolve(const CoupledState& x0, double t_end, double dt, const GevreyParams& p,
                    const DissipationParams& d, int ladder_nmax,
                    const StepCallback& on_step = {});

}  // namespace bsq
