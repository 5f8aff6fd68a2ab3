#include "bsq/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsq/runtime.hpp"

namespace bsq {

void apply_dealias(SpectralField& f) {
  const FourierGrid& g = *f.grid();
  const std::size_t m = g.size();
  for (int c = 0; c < f.components(); ++c) {
    auto span = f.component(c);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (!g.dealias_mask(idx)) span[idx] = cplx{0.0, 0.0};
    }
  }
}

void zero_mean(SpectralField& f) {
  const std::size_t zero = f.grid()->index(0, 0, 0);
  for (int c = 0; c < f.components(); ++c) f.at(c, zero) = cplx{0.0, 0.0};
}

void enforce_conjugate_symmetry(SpectralField& f) {
  const FourierGrid& g = *f.grid();
  const std::size_t m = g.size();
  for (int c = 0; c < f.components(); ++c) {
    auto span = f.component(c);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const std::size_t partner = g.conj_index(idx);
      if (idx < partner) {
        const cplx avg = 0.5 * (span[idx] + std::conj(span[partner]));
        span[idx] = avg;
        span[partner] = std::conj(avg);
      } else if (idx == partner) {
        span[idx] = cplx{span[idx].real(), 0.0};
      }
    }
  }
}

double relative_divergence(const SpectralField& u) {
  if (u.components() != 3) throw std::invalid_argument("relative_divergence: need 3 components");
  const FourierGrid& g = *u.grid();
  double num = 0.0, den = 0.0;
#pragma omp parallel for schedule(static) reduction(max : num, den)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto& k = g.wavenumber(idx);
    const cplx d = static_cast<double>(k[0]) * u.at(0, idx) +
                   static_cast<double>(k[1]) * u.at(1, idx) +
                   static_cast<double>(k[2]) * u.at(2, idx);
    num = std::max(num, std::abs(d));
    const double mag = std::max({std::abs(u.at(0, idx)), std::abs(u.at(1, idx)),
                                 std::abs(u.at(2, idx))});
    den = std::max(den, g.k_abs(idx) * mag);
  }
  return den > 0.0 ? num / den : 0.0;
}

double conjugate_defect(const SpectralField& f) {
  const FourierGrid& g = *f.grid();
  double num = 0.0, den = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto span = f.component(c);
#pragma omp parallel for schedule(static) reduction(max : num, den)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      num = std::max(num, std::abs(span[idx] - std::conj(span[g.conj_index(idx)])));
      den = std::max(den, std::abs(span[idx]));
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

SpectralField leray_project(const SpectralField& u) {
  if (u.components() != 3) throw std::invalid_argument("leray_project: need 3 components");
  const FourierGrid& g = *u.grid();
  SpectralField out(u.grid(), 3);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double ksq = g.k_sq(idx);
    if (ksq == 0.0) continue;  // zero mode emitted as 0
    const auto& k = g.wavenumber(idx);
    const cplx dot = static_cast<double>(k[0]) * u.at(0, idx) +
                     static_cast<double>(k[1]) * u.at(1, idx) +
                     static_cast<double>(k[2]) * u.at(2, idx);
    const cplx scale = dot / ksq;
    out.at(0, idx) = u.at(0, idx) - static_cast<double>(k[0]) * scale;
    out.at(1, idx) = u.at(1, idx) - static_cast<double>(k[1]) * scale;
    out.at(2, idx) = u.at(2, idx) - static_cast<double>(k[2]) * scale;
  }
  return out;
}

namespace {

// inverse transform of a dealiased copy, real part only
std::vector<double> dealiased_physical(const FourierGrid& g, std::span<const cplx> modes) {
  std::vector<cplx> spec(g.size());
  std::vector<cplx> phys(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    spec[idx] = g.dealias_mask(idx) ? modes[idx] : cplx{0.0, 0.0};
  }
  to_physical(g, spec, phys);
  std::vector<double> re(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) {
    re[static_cast<std::size_t>(i)] = phys[static_cast<std::size_t>(i)].real();
  }
  return re;
}

}  // namespace

SpectralField nonlinear_advection(const SpectralField& u, const SpectralField& w) {
  if (u.components() != 3) throw std::invalid_argument("nonlinear_advection: u needs 3 components");
  if (u.grid().get() != w.grid().get()) {
    throw std::invalid_argument("nonlinear_advection: grid mismatch");
  }
  const FourierGrid& g = *u.grid();
  const std::size_t m = g.size();

  std::array<std::vector<double>, 3> u_phys;
  for (int j = 0; j < 3; ++j) u_phys[j] = dealiased_physical(g, u.component(j));

  SpectralField out(w.grid(), w.components());
  std::vector<double> prod(m);
  std::vector<cplx> prod_c(m);
  std::vector<cplx> prod_hat(m);

  for (int c = 0; c < w.components(); ++c) {
    const std::vector<double> w_phys = dealiased_physical(g, w.component(c));
    auto out_span = out.component(c);
    for (int j = 0; j < 3; ++j) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        prod_c[idx] = cplx{u_phys[static_cast<std::size_t>(j)][idx] * w_phys[idx], 0.0};
      }
      to_spectral(g, prod_c, prod_hat);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double kj = static_cast<double>(g.wavenumber(idx)[j]);
        out_span[idx] += cplx{0.0, kj} * prod_hat[idx];
      }
    }
  }
  apply_dealias(out);
  zero_mean(out);
  enforce_conjugate_symmetry(out);
  return out;
}

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g) {
  if (f.components() != 1 || g.components() != 1) {
    throw std::invalid_argument("pointwise_product: scalar fields only");
  }
  if (f.grid().get() != g.grid().get()) {
    throw std::invalid_argument("pointwise_product: grid mismatch");
  }
  const FourierGrid& gr = *f.grid();
  const std::size_t m = gr.size();
  const std::vector<double> fp = dealiased_physical(gr, f.component(0));
  const std::vector<double> gp = dealiased_physical(gr, g.component(0));
  std::vector<cplx> prod(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    prod[idx] = cplx{fp[idx] * gp[idx], 0.0};
  }
  SpectralField out(f.grid(), 1);
  to_spectral(gr, prod, out.component(0));
  apply_dealias(out);
  zero_mean(out);
  enforce_conjugate_symmetry(out);
  return out;
}

namespace {

// canonical representative of a conjugate pair: first nonzero wavenumber
// component positive
bool is_canonical(const std::array<int, 3>& k) {
  if (k[0] != 0) return k[0] > 0;
  if (k[1] != 0) return k[1] > 0;
  return k[2] > 0;
}

}  // namespace

CoupledState random_divfree_state(std::uint64_t seed, const GridPtr& grid, double spectrum_decay,
                                  double amplitude) {
  if (amplitude < 0.0) throw std::invalid_argument("random_divfree_state: amplitude must be >= 0");
  const FourierGrid& g = *grid;
  CoupledState state(grid, 0.0);
  if (amplitude == 0.0) return state;
  const double coeff_scale = amplitude / g.spectral_scale();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (!g.dealias_mask(idx) || g.k_sq(idx) == 0.0) continue;
    const auto& k = g.wavenumber(idx);
    if (!is_canonical(k)) continue;
    Rng rng(derive_seed(seed, idx));
    const double mag = coeff_scale * std::pow(g.k_abs(idx), -spectrum_decay);
    const std::size_t partner = g.conj_index(idx);
    for (int c = 0; c < 3; ++c) {
      const cplx v{mag * rng.normal(), mag * rng.normal()};
      state.velocity.at(c, idx) = v;
      state.velocity.at(c, partner) = std::conj(v);
    }
    const cplx t{mag * rng.normal(), mag * rng.normal()};
    state.temperature.at(0, idx) = t;
    state.temperature.at(0, partner) = std::conj(t);
  }
  state.velocity = leray_project(state.velocity);
  return state;
}

SpectralField random_scalar_field(std::uint64_t seed, const GridPtr& grid, double spectrum_decay,
                                  double amplitude) {
  if (amplitude < 0.0) throw std::invalid_argument("random_scalar_field: amplitude must be >= 0");
  const FourierGrid& g = *grid;
  SpectralField f(grid, 1);
  if (amplitude == 0.0) return f;
  const double coeff_scale = amplitude / g.spectral_scale();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (!g.dealias_mask(idx) || g.k_sq(idx) == 0.0) continue;
    if (!is_canonical(g.wavenumber(idx))) continue;
    Rng rng(derive_seed(seed, idx));
    const double mag = coeff_scale * std::pow(g.k_abs(idx), -spectrum_decay);
    const cplx v{mag * rng.normal(), mag * rng.normal()};
    f.at(0, idx) = v;
    f.at(0, g.conj_index(idx)) = std::conj(v);
  }
  return f;
}

CoupledState single_mode_shear(const GridPtr& grid, const std::array<int, 3>& k0,
                               double amplitude) {
  const FourierGrid& g = *grid;
  if (k0[0] == 0 && k0[1] == 0 && k0[2] == 0) {
    throw std::invalid_argument("single_mode_shear: k0 must be nonzero");
  }
  const std::size_t idx = g.index_of_wavenumber(k0);
  if (!g.dealias_mask(idx)) {
    throw std::invalid_argument("single_mode_shear: k0 outside the dealias-retained band");
  }
  // direction orthogonal to k0: e3 x k0 unless parallel to e3, then e1
  std::array<double, 3> a{};
  if (k0[0] == 0 && k0[1] == 0) {
    a = {1.0, 0.0, 0.0};
  } else {
    a = {-static_cast<double>(k0[1]), static_cast<double>(k0[0]), 0.0};
    const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1]);
    a = {a[0] / norm, a[1] / norm, 0.0};
  }
  CoupledState state(grid, 0.0);
  const double n3 = static_cast<double>(g.size());
  const std::size_t partner = g.conj_index(idx);
  for (int c = 0; c < 3; ++c) {
    const cplx v{0.5 * amplitude * a[static_cast<std::size_t>(c)] * n3, 0.0};
    state.velocity.at(c, idx) = v;
    state.velocity.at(c, partner) = std::conj(v);
  }
  return state;
}

std::vector<double> physical_samples(const SpectralField& f, int component) {
  const FourierGrid& g = *f.grid();
  std::vector<cplx> phys(g.size());
  to_physical(g, f.component(component), phys);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = phys[i].real();
  return out;
}

}  // namespace bsq
