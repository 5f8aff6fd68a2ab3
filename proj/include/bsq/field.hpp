#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bsq/grid.hpp"

namespace bsq {

using cplx = std::complex<double>;

// Spectral coefficients of a mean-free periodic field, component-major.
// Stored values are raw forward-DFT outputs (unnormalized forward,
// inverse carries 1/n^3); grid->spectral_scale() calibrates them to the
// continuum-convention coefficients used by every norm.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(GridPtr grid, int components);

  const GridPtr& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t modes() const { return grid_ ? grid_->size() : 0; }

  cplx& at(int c, std::size_t idx) { return coeffs_[static_cast<std::size_t>(c) * modes_ + idx]; }
  const cplx& at(int c, std::size_t idx) const {
    return coeffs_[static_cast<std::size_t>(c) * modes_ + idx];
  }
  std::span<cplx> component(int c) {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes_, modes_};
  }
  std::span<const cplx> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes_, modes_};
  }
  std::vector<cplx>& raw() { return coeffs_; }
  const std::vector<cplx>& raw() const { return coeffs_; }

 private:
  GridPtr grid_;
  int components_ = 0;
  std::size_t modes_ = 0;
  std::vector<cplx> coeffs_;
};

// Velocity (3 components) + temperature (1 component) at one time.
struct CoupledState {
  SpectralField velocity;
  SpectralField temperature;
  double time = 0.0;

  CoupledState() = default;
  CoupledState(GridPtr grid, double t = 0.0)
      : velocity(grid, 3), temperature(grid, 1), time(t) {}

  const GridPtr& grid() const { return velocity.grid(); }
};

}  // namespace bsq
