#include "bsq/field.hpp"

namespace bsq {

SpectralField::SpectralField(GridPtr grid, int components)
    : grid_(std::move(grid)),
      components_(components),
      modes_(grid_->size()),
      coeffs_(static_cast<std::size_t>(components) * grid_->size(), cplx{0.0, 0.0}) {}

}  // namespace bsq
