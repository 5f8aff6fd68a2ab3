#pragma once

#include <vector>

#include "bsq/field.hpp"
#include "bsq/norms.hpp"

namespace bsq {

// Fractional heat semigroup e^{-t(-Delta)^gamma}: diagonal in Fourier with
// symbol e^{-t |k|^{2 gamma}}; the zero mode carries weight 1.
std::vector<double> semigroup_multiplier(const FourierGrid& grid, double t, double gamma);
SpectralField apply_semigroup(const SpectralField& f, double t, double gamma);
// velocity damped at order alpha, temperature at order beta
CoupledState free_evolution(const CoupledState& x0, double t, const DissipationParams& d);

// Uniform-partition trajectory, node j at time j*dt.
struct Trajectory {
  double dt = 0.0;
  std::vector<CoupledState> nodes;

  std::size_t size() const { return nodes.size(); }
  double t_end() const { return nodes.empty() ? 0.0 : dt * static_cast<double>(nodes.size() - 1); }
  const GridPtr& grid() const { return nodes.front().grid(); }
};

// sup over nodes of the Gevrey pair norm (the Banach norm the fixed-point
// argument contracts in)
double trajectory_norm(const Trajectory& x, const GevreyParams& p);

// Exact single-subinterval quadrature weights shared by the Duhamel
// integrals and the exponential time stepper, cancellation-safe for small
// L*lam: A(L, lam) = int_0^L e^{-(L-tau) lam} dtau and B(L, lam) = the
// trailing-age moment int_0^L q e^{-q lam} dq.
double duhamel_weight_a(double L, double lam);
double duhamel_weight_b(double L, double lam);

// Duhamel integral int_0^t e^{-(t-tau)(-Delta)^gamma} F(tau) dtau with F the
// piecewise-linear-in-tau interpolant of forcing samples on the uniform
// partition {j*dt}. The kernel is integrated exactly on each subinterval
// (exponential-integrator weights), so the only error is the interpolant's
// O(dt^2); constant forcing reproduces F (1 - e^{-t|k|^{2 gamma}})/|k|^{2 gamma}
// exactly. t must lie in [0, (samples-1)*dt].
SpectralField duhamel_integral(const std::vector<SpectralField>& forcing, double dt, double t,
                               double gamma);
// same quadrature evaluated at every node in one per-mode recursive sweep;
// agrees with duhamel_integral at the nodes up to summation-order roundoff
std::vector<SpectralField> duhamel_sweep(const std::vector<SpectralField>& forcing, double dt,
                                         double gamma);

// Mild-formulation operators on trajectories. With x = (w, v), y = (gam, phi):
//   B1(x,y)(t) = -int_0^t e^{-(t-tau)(-Delta)^alpha} P(w . grad gam) dtau
//   B2(x,y)(t) = -int_0^t e^{-(t-tau)(-Delta)^beta}  (w . grad phi)  dtau
//   L1(x)(t)   =  int_0^t e^{-(t-tau)(-Delta)^alpha} P(v e3) dtau,  L2 = 0
// Advection forcings are dealiased and mean-free; velocity outputs are
// divergence-free by construction.
CoupledState bilinear_B(const Trajectory& x, const Trajectory& y, double t,
                        const DissipationParams& d);
CoupledState linear_L(const Trajectory& x, double t, const DissipationParams& d);
// full-trajectory variants used by the Picard iteration (one sweep per mode)
Trajectory bilinear_B_sweep(const Trajectory& x, const Trajectory& y, const DissipationParams& d);
Trajectory linear_L_sweep(const Trajectory& x, const DissipationParams& d);

}  // namespace bsq
