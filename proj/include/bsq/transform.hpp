#pragma once

#include <span>

#include "bsq/field.hpp"

namespace bsq {

// Discrete transforms between physical samples on the uniform 2pi-periodic
// grid and spectral coefficients. Forward is the unnormalized sum over
// samples of f(x) e^{-ik.x}; inverse applies 1/n^3. Complex-to-complex;
// callers own both buffers (each of grid->size() entries).
void to_spectral(const FourierGrid& grid, std::span<const cplx> physical, std::span<cplx> modes);
void to_physical(const FourierGrid& grid, std::span<const cplx> modes, std::span<cplx> physical);

}  // namespace bsq
