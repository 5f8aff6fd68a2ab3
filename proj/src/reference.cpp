#include "bsq/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bsq {
namespace reference {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void dft_forward(const FourierGrid& grid, std::span<const cplx> physical, std::span<cplx> modes) {
  const int n = grid.n();
  const std::size_t m = grid.size();
  if (physical.size() != m || modes.size() != m) {
    throw std::invalid_argument("dft_forward: buffer size mismatch");
  }
  // separable per-axis phase tables keep this O(N^2) instead of O(N^2 n)
  std::vector<cplx> phase(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double ang = -kTwoPi * static_cast<double>(i) * static_cast<double>(j) / n;
      phase[static_cast<std::size_t>(i) * n + j] = cplx{std::cos(ang), std::sin(ang)};
    }
  }
  for (std::size_t out = 0; out < m; ++out) {
    const int i1 = static_cast<int>(out / (static_cast<std::size_t>(n) * n));
    const int i2 = static_cast<int>((out / n) % static_cast<std::size_t>(n));
    const int i3 = static_cast<int>(out % static_cast<std::size_t>(n));
    cplx acc{0.0, 0.0};
    for (std::size_t in = 0; in < m; ++in) {
      const int j1 = static_cast<int>(in / (static_cast<std::size_t>(n) * n));
      const int j2 = static_cast<int>((in / n) % static_cast<std::size_t>(n));
      const int j3 = static_cast<int>(in % static_cast<std::size_t>(n));
      acc += physical[in] * phase[static_cast<std::size_t>(i1) * n + j1] *
             phase[static_cast<std::size_t>(i2) * n + j2] *
             phase[static_cast<std::size_t>(i3) * n + j3];
    }
    modes[out] = acc;
  }
}

void dft_inverse(const FourierGrid& grid, std::span<const cplx> modes, std::span<cplx> physical) {
  const int n = grid.n();
  const std::size_t m = grid.size();
  if (physical.size() != m || modes.size() != m) {
    throw std::invalid_argument("dft_inverse: buffer size mismatch");
  }
  std::vector<cplx> phase(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double ang = kTwoPi * static_cast<double>(i) * static_cast<double>(j) / n;
      phase[static_cast<std::size_t>(i) * n + j] = cplx{std::cos(ang), std::sin(ang)};
    }
  }
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t out = 0; out < m; ++out) {
    const int i1 = static_cast<int>(out / (static_cast<std::size_t>(n) * n));
    const int i2 = static_cast<int>((out / n) % static_cast<std::size_t>(n));
    const int i3 = static_cast<int>(out % static_cast<std::size_t>(n));
    cplx acc{0.0, 0.0};
    for (std::size_t in = 0; in < m; ++in) {
      const int j1 = static_cast<int>(in / (static_cast<std::size_t>(n) * n));
      const int j2 = static_cast<int>((in / n) % static_cast<std::size_t>(n));
      const int j3 = static_cast<int>(in % static_cast<std::size_t>(n));
      acc += modes[in] * phase[static_cast<std::size_t>(i1) * n + j1] *
             phase[static_cast<std::size_t>(i2) * n + j2] *
             phase[static_cast<std::size_t>(i3) * n + j3];
    }
    physical[out] = inv * acc;
  }
}

SpectralField dense_advection(const SpectralField& u, const SpectralField& w) {
  if (u.components() != 3) throw std::invalid_argument("dense_advection: u needs 3 components");
  if (u.grid().get() != w.grid().get()) {
    throw std::invalid_argument("dense_advection: grid mismatch");
  }
  const FourierGrid& g = *u.grid();
  const int n = g.n();
  const double inv_n3 = 1.0 / static_cast<double>(g.size());

  std::vector<std::size_t> retained;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (g.dealias_mask(idx)) retained.push_back(idx);
  }

  SpectralField out(w.grid(), w.components());
  for (int c = 0; c < w.components(); ++c) {
    for (const std::size_t ia : retained) {
      const auto& ka = g.wavenumber(ia);
      const cplx ua[3] = {u.at(0, ia), u.at(1, ia), u.at(2, ia)};
      if (ua[0] == cplx{} && ua[1] == cplx{} && ua[2] == cplx{}) continue;
      for (const std::size_t ib : retained) {
        const cplx wb = w.at(c, ib);
        if (wb == cplx{}) continue;
        const auto& kb = g.wavenumber(ib);
        const int k1 = ka[0] + kb[0];
        const int k2 = ka[1] + kb[1];
        const int k3 = ka[2] + kb[2];
        if (k1 < -n / 2 || k1 >= n / 2 || k2 < -n / 2 || k2 >= n / 2 || k3 < -n / 2 ||
            k3 >= n / 2) {
          continue;
        }
        const std::size_t io = g.index_of_wavenumber({k1, k2, k3});
        const cplx dot = static_cast<double>(k1) * ua[0] + static_cast<double>(k2) * ua[1] +
                         static_cast<double>(k3) * ua[2];
        out.at(c, io) += cplx{0.0, 1.0} * dot * wb * inv_n3;
      }
    }
    // mirror the production mask-after-product
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      if (!g.dealias_mask(idx)) out.at(c, idx) = cplx{0.0, 0.0};
    }
    out.at(c, g.index(0, 0, 0)) = cplx{0.0, 0.0};
  }
  return out;
}

double weighted_norm_serial(const SpectralField& f, double a, double sigma, double s) {
  const FourierGrid& g = *f.grid();
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const double kk = g.k_abs(idx);
      if (kk == 0.0) continue;
      total += std::pow(kk, 2.0 * s) * std::exp(2.0 * a * std::pow(kk, 1.0 / sigma)) *
               std::norm(f.at(c, idx));
    }
  }
  return std::sqrt(g.mode_weight() * total);
}

double weighted_l1_serial(const SpectralField& f, double a_eff, double sigma) {
  const FourierGrid& g = *f.grid();
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const double kk = g.k_abs(idx);
      if (kk == 0.0) continue;
      total += std::exp(a_eff * std::pow(kk, 1.0 / sigma)) * std::abs(f.at(c, idx));
    }
  }
  return g.spectral_scale() * total;
}

}  // namespace reference
}  // namespace bsq
