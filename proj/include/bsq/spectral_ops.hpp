#pragma once

#include <cstdint>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/transform.hpp"

namespace bsq {

// In-place lattice hygiene. Every operation below returns fields that are
// dealiased, mean-free, and exactly conjugate-symmetric.
void apply_dealias(SpectralField& f);
void zero_mean(SpectralField& f);
// averages each coefficient with the conjugate of its partner; exact
// symmetry afterwards, no-op up to rounding for already-symmetric input
void enforce_conjugate_symmetry(SpectralField& f);

// max_k |k . u_hat(k)| / max_k |k| |u_hat(k)|, 0 for the zero field
double relative_divergence(const SpectralField& u);
// max over modes of |c(k) - conj(c(-k))| / max |c|, 0 for the zero field
double conjugate_defect(const SpectralField& f);

// Per-mode projection onto divergence-free fields: u_hat - k (k.u_hat)/|k|^2,
// zero mode emitted as 0. Input must have 3 components.
SpectralField leray_project(const SpectralField& u);

// Advection u.grad(w) in divergence form: i sum_j k_j F[u_j w_c] per
// component c. Dealias mask applied to both inputs before the physical-space
// product and to the output; output mean-free and conjugate-symmetric.
// u must be 3-component and share w's grid.
SpectralField nonlinear_advection(const SpectralField& u, const SpectralField& w);

// Pointwise product fg of two scalar fields through the same dealiased
// physical-space pipeline; output dealiased, mean-free, conjugate-symmetric.
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g);

// Random mean-free state: coefficients drawn per retained mode from a seed
// derived with the mode index (construction order never matters), amplitude
// scaled by |k|^{-spectrum_decay}, velocity Leray-projected. Same seed, same
// state, any thread count. amplitude 0 gives the zero state.
CoupledState random_divfree_state(std::uint64_t seed, const GridPtr& grid, double spectrum_decay,
                                  double amplitude);

// Scalar sibling of random_divfree_state: one seeded Gaussian draw per
// retained canonical mode, conjugate partner mirrored.
SpectralField random_scalar_field(std::uint64_t seed, const GridPtr& grid, double spectrum_decay,
                                  double amplitude);

// Single-mode shear u = A cos(k0 . x) with A perpendicular to k0 (physical
// peak amplitude as given), temperature zero. Advection self-cancels:
// u.grad(u) = 0 exactly.
CoupledState single_mode_shear(const GridPtr& grid, const std::array<int, 3>& k0,
                               double amplitude);

// physical samples of one component (real part; imaginary junk discarded)
std::vector<double> physical_samples(const SpectralField& f, int component);

}  // namespace bsq
