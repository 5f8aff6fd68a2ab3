#include "bsq/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bsq {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

FourierGrid::FourierGrid(int n_per_axis) : n_(n_per_axis) {
  if (n_ < 8 || n_ > 256 || n_ % 2 != 0) {
    throw std::invalid_argument("grid: n_per_axis must be even and in [8, 256], got " +
                                std::to_string(n_));
  }
  modes_ = static_cast<std::size_t>(n_) * n_ * n_;
  const double n3 = static_cast<double>(modes_);
  cell_volume_ = kTwoPi * kTwoPi * kTwoPi / n3;
  spectral_scale_ = std::pow(kTwoPi, 1.5) / n3;

  wave_.resize(modes_);
  k_abs_.resize(modes_);
  k_sq_.resize(modes_);
  mask_.resize(modes_);
  conj_.resize(modes_);

  const double cutoff = static_cast<double>(n_) / 3.0;
  max_retained_k_abs_ = 0.0;
  for (int i1 = 0; i1 < n_; ++i1) {
    const int k1 = i1 < n_ / 2 ? i1 : i1 - n_;
    for (int i2 = 0; i2 < n_; ++i2) {
      const int k2 = i2 < n_ / 2 ? i2 : i2 - n_;
      for (int i3 = 0; i3 < n_; ++i3) {
        const int k3 = i3 < n_ / 2 ? i3 : i3 - n_;
        const std::size_t idx = index(i1, i2, i3);
        wave_[idx] = {k1, k2, k3};
        const double sq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 +
                          static_cast<double>(k3) * k3;
        k_sq_[idx] = sq;
        k_abs_[idx] = std::sqrt(sq);
        const bool keep = std::abs(k1) <= cutoff && std::abs(k2) <= cutoff && std::abs(k3) <= cutoff;
        mask_[idx] = keep ? 1 : 0;
        if (keep && k_abs_[idx] > max_retained_k_abs_) max_retained_k_abs_ = k_abs_[idx];
        // -k folded back into [-n/2, n/2) modulo n; self-paired on the
        // -n/2 planes, which the dealias mask always removes
        conj_[idx] = static_cast<std::uint32_t>(
            index(axis_index(k1 == -n_ / 2 ? k1 : -k1), axis_index(k2 == -n_ / 2 ? k2 : -k2),
                  axis_index(k3 == -n_ / 2 ? k3 : -k3)));
      }
    }
  }
}

GridPtr make_grid(int n_per_axis) { return std::make_shared<const FourierGrid>(n_per_axis); }

}  // namespace bsq
