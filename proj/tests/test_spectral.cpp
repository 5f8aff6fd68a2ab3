#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "bsq/grid.hpp"
#include "bsq/reference.hpp"
#include "bsq/runtime.hpp"
#include "bsq/spectral_ops.hpp"
#include "bsq/transform.hpp"
#include "helpers.hpp"

using namespace bsq;
using bsq::testing::random_scalar_field;
using bsq::testing::rel_field_diff;

TEST_CASE("grid construction validates n_per_axis") {
  CHECK_THROWS_AS(make_grid(7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(9), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(6), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(258), std::invalid_argument);
  CHECK_NOTHROW(make_grid(8));
  CHECK_NOTHROW(make_grid(16));
}

TEST_CASE("dealias mask keeps |k_i| <= n/3 and kills the rest") {
  auto g32 = make_grid(32);
  CHECK(g32->dealias_mask(g32->index_of_wavenumber({10, -10, 10})));
  CHECK_FALSE(g32->dealias_mask(g32->index_of_wavenumber({11, 0, 0})));
  CHECK_FALSE(g32->dealias_mask(g32->index_of_wavenumber({0, 0, -11})));
  auto g8 = make_grid(8);
  CHECK(g8->dealias_mask(g8->index_of_wavenumber({2, 2, -2})));
  CHECK_FALSE(g8->dealias_mask(g8->index_of_wavenumber({3, 0, 0})));
  CHECK_FALSE(g8->dealias_mask(g8->index_of_wavenumber({0, -4, 0})));
}

TEST_CASE("wavenumber bookkeeping round-trips and conjugate pairing is involutive") {
  auto g = make_grid(8);
  for (std::size_t idx = 0; idx < g->size(); ++idx) {
    CHECK(g->index_of_wavenumber(g->wavenumber(idx)) == idx);
    CHECK(g->conj_index(g->conj_index(idx)) == idx);
  }
  // -k really is the partner away from the -n/2 planes
  const std::size_t i = g->index_of_wavenumber({1, -2, 3});
  CHECK(g->wavenumber(g->conj_index(i)) == std::array<int, 3>{-1, 2, -3});
}

TEST_CASE("transform round trip is the identity") {
  auto g = make_grid(16);
  SpectralField f = random_scalar_field(11, g);
  std::vector<cplx> phys(g->size()), back(g->size());
  to_physical(*g, f.component(0), phys);
  to_spectral(*g, phys, back);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    num = std::max(num, std::abs(back[i] - f.at(0, i)));
    den = std::max(den, std::abs(f.at(0, i)));
  }
  CHECK(num / den < 1e-12);
}

TEST_CASE("fft path matches the direct-sum reference transforms") {
  auto g = make_grid(8);
  SpectralField f = random_scalar_field(5, g);
  std::vector<cplx> fft_phys(g->size()), ref_phys(g->size());
  to_physical(*g, f.component(0), fft_phys);
  reference::dft_inverse(*g, f.component(0), ref_phys);
  double scale = 0.0;
  for (auto& v : ref_phys) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(std::abs(fft_phys[i] - ref_phys[i]) <= 1e-12 * scale);
  }

  std::vector<cplx> fft_modes(g->size()), ref_modes(g->size());
  to_spectral(*g, fft_phys, fft_modes);
  reference::dft_forward(*g, ref_phys, ref_modes);
  double mscale = 0.0;
  for (auto& v : ref_modes) mscale = std::max(mscale, std::abs(v));
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(std::abs(fft_modes[i] - ref_modes[i]) <= 1e-12 * mscale);
  }
}

TEST_CASE("single cosine mode transforms to its sample values") {
  auto g = make_grid(8);
  SpectralField f(g, 1);
  const double n3 = static_cast<double>(g->size());
  const std::size_t plus = g->index_of_wavenumber({1, 0, 0});
  f.at(0, plus) = cplx{0.5 * n3, 0.0};
  f.at(0, g->conj_index(plus)) = cplx{0.5 * n3, 0.0};
  auto samples = physical_samples(f, 0);
  for (int i1 = 0; i1 < g->n(); ++i1) {
    const double x1 = 2.0 * M_PI * i1 / g->n();
    for (int i2 = 0; i2 < g->n(); ++i2) {
      for (int i3 = 0; i3 < g->n(); ++i3) {
        CHECK(samples[g->index(i1, i2, i3)] == doctest::Approx(std::cos(x1)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("leray projection annihilates gradients and is idempotent") {
  auto g = make_grid(16);
  SpectralField phi = random_scalar_field(21, g);
  SpectralField grad(g, 3);
  for (std::size_t idx = 0; idx < g->size(); ++idx) {
    const auto& k = g->wavenumber(idx);
    for (int c = 0; c < 3; ++c) {
      grad.at(c, idx) = cplx{0.0, static_cast<double>(k[c])} * phi.at(0, idx);
    }
  }
  const double grad_scale = bsq::testing::max_abs(grad);

  SpectralField proj = leray_project(grad);
  for (const auto& v : proj.raw()) CHECK(std::abs(v) <= 1e-12 * grad_scale);

  SpectralField u(g, 3);
  for (int c = 0; c < 3; ++c) {
    SpectralField r = random_scalar_field(31 + static_cast<std::uint64_t>(c), g);
    for (std::size_t idx = 0; idx < g->size(); ++idx) u.at(c, idx) = r.at(0, idx);
  }
  SpectralField once = leray_project(u);
  CHECK(relative_divergence(once) < 1e-12);
  SpectralField twice = leray_project(once);
  CHECK(rel_field_diff(once, twice) < 1e-13);
  CHECK(conjugate_defect(once) < 1e-13);

  CHECK_THROWS_AS(leray_project(phi), std::invalid_argument);
}

TEST_CASE("advection matches the dense convolution oracle at n = 8") {
  auto g = make_grid(8);
  for (std::uint64_t seed : {101ULL, 202ULL, 303ULL}) {
    SpectralField u(g, 3);
    for (int c = 0; c < 3; ++c) {
      SpectralField r = random_scalar_field(seed + static_cast<std::uint64_t>(c), g, 1.0);
      for (std::size_t idx = 0; idx < g->size(); ++idx) u.at(c, idx) = r.at(0, idx);
    }
    u = leray_project(u);
    SpectralField w = random_scalar_field(seed + 7, g, 1.0);

    SpectralField fast = nonlinear_advection(u, w);
    SpectralField dense = reference::dense_advection(u, w);
    CHECK(rel_field_diff(dense, fast) < 1e-10);
  }
}

TEST_CASE("two-mode hand convolution") {
  auto g = make_grid(8);
  const std::array<int, 3> k0{1, 0, 0};
  const std::array<int, 3> k1{0, 1, 0};
  const std::array<double, 3> amp{0.0, 0.0, 1.5};  // perpendicular to k0
  const double w0 = 0.75;
  const double n3 = static_cast<double>(g->size());

  SpectralField u(g, 3);
  for (int c = 0; c < 3; ++c) {
    u.at(c, g->index_of_wavenumber(k0)) = cplx{amp[static_cast<std::size_t>(c)], 0.0};
    u.at(c, g->index_of_wavenumber({-1, 0, 0})) = cplx{amp[static_cast<std::size_t>(c)], 0.0};
  }
  SpectralField w(g, 1);
  w.at(0, g->index_of_wavenumber(k1)) = cplx{w0, 0.0};
  w.at(0, g->index_of_wavenumber({0, -1, 0})) = cplx{w0, 0.0};

  SpectralField adv = nonlinear_advection(u, w);

  // i ((k0+k1) . A) w0 / n^3 at k0+k1; A has only the third component, and
  // (k0 +- k1)_3 = 0, so every surviving coefficient is zero here
  for (const auto& v : adv.raw()) CHECK(std::abs(v) <= 1e-15);

  // same setup with A = e2 gives i (k . A) = i at k = k0 + k1
  SpectralField u2(g, 3);
  u2.at(1, g->index_of_wavenumber(k0)) = cplx{1.0, 0.0};
  u2.at(1, g->index_of_wavenumber({-1, 0, 0})) = cplx{1.0, 0.0};
  SpectralField adv2 = nonlinear_advection(u2, w);
  const cplx expected = cplx{0.0, 1.0} * w0 / n3;
  CHECK(std::abs(adv2.at(0, g->index_of_wavenumber({1, 1, 0})) - expected) <= 1e-15);
  CHECK(std::abs(adv2.at(0, g->index_of_wavenumber({1, -1, 0})) - (-expected)) <= 1e-15);
  CHECK(std::abs(adv2.at(0, g->index_of_wavenumber({-1, 1, 0})) - expected) <= 1e-15);
  CHECK(std::abs(adv2.at(0, g->index_of_wavenumber({-1, -1, 0})) - (-expected)) <= 1e-15);
}

TEST_CASE("advection of a divergence-free field is skew-symmetric") {
  auto g = make_grid(16);
  for (std::uint64_t seed : {41ULL, 42ULL}) {
    SpectralField u(g, 3);
    for (int c = 0; c < 3; ++c) {
      SpectralField r = random_scalar_field(seed * 11 + static_cast<std::uint64_t>(c), g, 1.5);
      for (std::size_t idx = 0; idx < g->size(); ++idx) u.at(c, idx) = r.at(0, idx);
    }
    u = leray_project(u);
    SpectralField w = random_scalar_field(seed * 13, g, 1.5);
    SpectralField adv = nonlinear_advection(u, w);

    double inner = 0.0, scale = 0.0;
    for (std::size_t idx = 0; idx < g->size(); ++idx) {
      inner += adv.at(0, idx).real() * w.at(0, idx).real() +
               adv.at(0, idx).imag() * w.at(0, idx).imag();
      scale += std::abs(adv.at(0, idx)) * std::abs(w.at(0, idx));
    }
    CHECK(std::abs(inner) <= 1e-10 * scale);
  }
}

TEST_CASE("advection validates inputs") {
  auto g = make_grid(8);
  auto g2 = make_grid(16);
  SpectralField u(g, 3), w(g2, 1), s(g, 1);
  CHECK_THROWS_AS(nonlinear_advection(u, w), std::invalid_argument);
  CHECK_THROWS_AS(nonlinear_advection(s, s), std::invalid_argument);
}

TEST_CASE("random divergence-free states are reproducible and clean") {
  auto g = make_grid(16);
  CoupledState a = random_divfree_state(9, g, 2.0, 1.0);
  CoupledState b = random_divfree_state(9, g, 2.0, 1.0);
  CHECK(a.velocity.raw() == b.velocity.raw());
  CHECK(a.temperature.raw() == b.temperature.raw());

  CoupledState c = random_divfree_state(10, g, 2.0, 1.0);
  CHECK(bsq::testing::rel_state_diff(a, c) > 1e-3);

  CHECK(relative_divergence(a.velocity) < 1e-12);
  CHECK(conjugate_defect(a.velocity) == 0.0);
  CHECK(conjugate_defect(a.temperature) == 0.0);
  const std::size_t zero = g->index(0, 0, 0);
  CHECK(a.velocity.at(0, zero) == cplx{0.0, 0.0});
  CHECK(a.temperature.at(0, zero) == cplx{0.0, 0.0});
  for (std::size_t idx = 0; idx < g->size(); ++idx) {
    if (!g->dealias_mask(idx)) {
      CHECK(a.velocity.at(0, idx) == cplx{0.0, 0.0});
      CHECK(a.temperature.at(0, idx) == cplx{0.0, 0.0});
    }
  }

  CoupledState z = random_divfree_state(9, g, 2.0, 0.0);
  CHECK(bsq::testing::max_abs(z.velocity) == 0.0);
  CHECK(bsq::testing::max_abs(z.temperature) == 0.0);
}

TEST_CASE("axis-aligned shear has exactly self-cancelling advection") {
  auto g = make_grid(8);
  CoupledState s = single_mode_shear(g, {0, 0, 1}, 1.0);
  CHECK(relative_divergence(s.velocity) == 0.0);
  SpectralField adv = nonlinear_advection(s.velocity, s.velocity);
  for (const auto& v : adv.raw()) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("advection output stays conjugate-symmetric, dealiased, mean-free") {
  auto g = make_grid(16);
  SpectralField u(g, 3);
  for (int c = 0; c < 3; ++c) {
    SpectralField r = random_scalar_field(71 + static_cast<std::uint64_t>(c), g, 1.0);
    for (std::size_t idx = 0; idx < g->size(); ++idx) u.at(c, idx) = r.at(0, idx);
  }
  u = leray_project(u);
  SpectralField w = random_scalar_field(83, g, 1.0);
  SpectralField adv = nonlinear_advection(u, w);
  CHECK(conjugate_defect(adv) == 0.0);
  CHECK(adv.at(0, g->index(0, 0, 0)) == cplx{0.0, 0.0});
  for (std::size_t idx = 0; idx < g->size(); ++idx) {
    if (!g->dealias_mask(idx)) CHECK(adv.at(0, idx) == cplx{0.0, 0.0});
  }
}
