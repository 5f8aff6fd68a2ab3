#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bsq/field.hpp"
#include "bsq/runtime.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq::testing {

// random dealiased mean-free conjugate-symmetric scalar field
inline SpectralField random_scalar_field(std::uint64_t seed, const GridPtr& grid,
                                         double decay = 2.0, double amplitude = 1.0) {
  return bsq::random_scalar_field(seed, grid, decay, amplitude);
}

inline double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.raw()) m = std::max(m, std::abs(c));
  return m;
}

// max |a-b| over all coefficients, relative to max |a|
inline double rel_field_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) {
    num = std::max(num, std::abs(a.raw()[i] - b.raw()[i]));
  }
  const double den = max_abs(a);
  return den > 0.0 ? num / den : num;
}

inline double rel_state_diff(const CoupledState& a, const CoupledState& b) {
  return std::max(rel_field_diff(a.velocity, b.velocity),
                  rel_field_diff(a.temperature, b.temperature));
}

}  // namespace bsq::testing
