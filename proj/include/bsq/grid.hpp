#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace bsq {

// Fourier lattice for the 2pi-periodic cube. Mode storage is row-major over
// (i1, i2, i3) in the transform's natural frequency order: axis index i maps
// to wavenumber k = i for i < n/2 and k = i - n otherwise, so k ranges over
// [-n/2, n/2). Immutable after construction; share via make_grid.
class FourierGrid {
 public:
  explicit FourierGrid(int n_per_axis);

  int n() const { return n_; }
  std::size_t size() const { return modes_; }

  // physical sample weight (2pi)^3/n^3 and calibrated-coefficient scale
  // (2pi)^{3/2}/n^3; see docs/FORMATS.md for the normalization contract
  double cell_volume() const { return cell_volume_; }
  double spectral_scale() const { return spectral_scale_; }
  // weight per |calibrated coefficient|^2 when summing over modes
  double mode_weight() const { return spectral_scale_ * spectral_scale_; }

  const std::array<int, 3>& wavenumber(std::size_t idx) const { return wave_[idx]; }
  double k_abs(std::size_t idx) const { return k_abs_[idx]; }
  double k_sq(std::size_t idx) const { return k_sq_[idx]; }
  bool dealias_mask(std::size_t idx) const { return mask_[idx] != 0; }
  std::size_t conj_index(std::size_t idx) const { return conj_[idx]; }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
  }
  // axis index for an integer wavenumber in [-n/2, n/2)
  int axis_index(int k) const { return k >= 0 ? k : k + n_; }
  std::size_t index_of_wavenumber(const std::array<int, 3>& k) const {
    return index(axis_index(k[0]), axis_index(k[1]), axis_index(k[2]));
  }

  // largest |k| among dealias-retained modes
  double max_retained_k_abs() const { return max_retained_k_abs_; }

 private:
  int n_;
  std::size_t modes_;
  double cell_volume_;
  double spectral_scale_;
  double max_retained_k_abs_;
  std::vector<std::array<int, 3>> wave_;
  std::vector<double> k_abs_;
  std::vector<double> k_sq_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint32_t> conj_;
};

using GridPtr = std::shared_ptr<const FourierGrid>;

// n_per_axis must be even and in [8, 256]; throws std::invalid_argument.
GridPtr make_grid(int n_per_axis);

}  // namespace bsq
