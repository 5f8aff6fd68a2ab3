#pragma once

#include "bsq/field.hpp"

namespace bsq {
namespace reference {

// Straight serial implementations with independent algorithms, kept as
// oracles for the OpenMP/FFT production kernels and as the baseline side of
// the kernel benchmark. O(N^2) cost; intended for small grids.

// direct-sum DFTs (same conventions as to_spectral/to_physical)
void dft_forward(const FourierGrid& grid, std::span<const cplx> physical, std::span<cplx> modes);
void dft_inverse(const FourierGrid& grid, std::span<const cplx> modes, std::span<cplx> physical);

// dense convolution over retained modes, divergence form, true (non-circular)
// wavenumber addition; mirrors nonlinear_advection's contract
SpectralField dense_advection(const SpectralField& u, const SpectralField& w);

// serial left-to-right accumulation of the weighted quadratic norm
double weighted_norm_serial(const SpectralField& f, double a, double sigma, double s);
double weighted_l1_serial(const SpectralField& f, double a_eff, double sigma);

}  // namespace reference
}  // namespace bsq
