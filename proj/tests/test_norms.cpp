#include "doctest.h"

#include <cmath>
#include <omp.h>

#include "bsq/norms.hpp"
#include "bsq/reference.hpp"
#include "bsq/spectral_ops.hpp"
#include "helpers.hpp"

using namespace bsq;
using bsq::testing::random_scalar_field;

TEST_CASE("parameter windows are enforced") {
  CHECK_THROWS_AS((GevreyParams{-0.1, 2.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GevreyParams{1.0, 1.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GevreyParams{1.0, 2.0, 1.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GevreyParams{1.0, 2.0, -0.2}.validate()), std::invalid_argument);
  CHECK_NOTHROW((GevreyParams{0.0, 1.01, 0.0}.validate()));
  CHECK_THROWS_AS((DissipationParams{0.5, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DissipationParams{1.0, 0.4}.validate()), std::invalid_argument);
  CHECK_NOTHROW((DissipationParams{0.51, 2.0}.validate()));
}

TEST_CASE("a = 0, s = 0 norm is the physical L2 norm (Plancherel)") {
  auto g = make_grid(16);
  SpectralField f = random_scalar_field(3, g);
  auto samples = physical_samples(f, 0);
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  const double l2_phys = std::sqrt(sum * g->cell_volume());
  const double l2_spec = gevrey_norm(f, GevreyParams{0.0, 2.0, 0.0});
  CHECK(l2_spec == doctest::Approx(l2_phys).epsilon(1e-12));
}

TEST_CASE("single-mode closed forms") {
  auto g = make_grid(16);

  SpectralField f(g, 1);
  const std::size_t k2 = g->index_of_wavenumber({2, 0, 0});
  f.at(0, k2) = cplx{1.0, 0.0};
  f.at(0, g->conj_index(k2)) = cplx{1.0, 0.0};
  // norm^2 = 2 * (|k|^{2s} e^{2a|k|^{1/sigma}}) * mode_weight at |k| = 2
  const double expected =
      std::sqrt(2.0 * 4.0 * std::exp(2.0 * std::sqrt(2.0)) * g->mode_weight());
  CHECK(gevrey_norm(f, GevreyParams{1.0, 2.0, 1.0}) ==
        doctest::Approx(expected).epsilon(1e-14));

  SpectralField h(g, 1);
  const std::size_t k3 = g->index_of_wavenumber({0, 3, 0});
  h.at(0, k3) = cplx{1.0, 0.0};
  h.at(0, g->conj_index(k3)) = cplx{1.0, 0.0};
  CHECK(sobolev_norm(h, 2.0) ==
        doctest::Approx(9.0 * std::sqrt(2.0 * g->mode_weight())).epsilon(1e-14));

  SpectralField w(g, 1);
  const double m = 0.35;
  const std::size_t k1 = g->index_of_wavenumber({0, 0, 1});
  w.at(0, k1) = cplx{0.0, m};
  w.at(0, g->conj_index(k1)) = cplx{0.0, -m};
  const double a = 1.2, sigma = 2.0;
  CHECK(weighted_l1_norm(w, a / sigma, sigma) ==
        doctest::Approx(2.0 * std::exp(a / sigma) * m * g->spectral_scale()).epsilon(1e-14));
}

TEST_CASE("norms are monotone in radius and regularity") {
  auto g = make_grid(16);
  SpectralField f = random_scalar_field(17, g);
  const double base = weighted_norm(f, 0.5, 2.0, 0.5);
  CHECK(weighted_norm(f, 0.8, 2.0, 0.5) >= base);
  CHECK(weighted_norm(f, 0.5, 2.0, 0.9) >= base);  // every mode has |k| >= 1
}

TEST_CASE("pair norms combine components as documented") {
  auto g = make_grid(8);
  CoupledState x = random_divfree_state(23, g, 2.0, 1.0);
  const GevreyParams p{1.0, 2.0, 0.5};
  const double nu = gevrey_norm(x.velocity, p);
  const double nt = gevrey_norm(x.temperature, p);
  CHECK(pair_norm(x, p) == doctest::Approx(std::sqrt(nu * nu + nt * nt)).epsilon(1e-15));
  CHECK(pair_weighted_l1(x, 0.5, 2.0) ==
        doctest::Approx(weighted_l1_norm(x.velocity, 0.5, 2.0) +
                        weighted_l1_norm(x.temperature, 0.5, 2.0))
            .epsilon(1e-15));
}

TEST_CASE("production norms agree with serial reference accumulation") {
  auto g = make_grid(16);
  SpectralField f = random_scalar_field(29, g, 1.0);
  CHECK(weighted_norm(f, 0.7, 2.5, 0.8) ==
        doctest::Approx(reference::weighted_norm_serial(f, 0.7, 2.5, 0.8)).epsilon(1e-13));
  CHECK(weighted_l1_norm(f, 0.3, 2.5) ==
        doctest::Approx(reference::weighted_l1_serial(f, 0.3, 2.5)).epsilon(1e-13));
}

TEST_CASE("norm values do not depend on the OpenMP thread count") {
  auto g = make_grid(16);
  SpectralField f = random_scalar_field(37, g, 1.0);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double n1 = weighted_norm(f, 1.0, 2.0, 0.5);
  const double l1 = weighted_l1_norm(f, 0.5, 2.0);
  omp_set_num_threads(4);
  const double n4 = weighted_norm(f, 1.0, 2.0, 0.5);
  const double l4 = weighted_l1_norm(f, 0.5, 2.0);
  omp_set_num_threads(saved);
  CHECK(n1 == n4);
  CHECK(l1 == l4);
}

TEST_CASE("lattice Cauchy-Schwarz ties the weighted-L1 functional to the next ladder norm") {
  auto g = make_grid(16);
  const double a = 1.0, sigma = 2.0, s = 0.5;
  const double a_l1 = a / sigma;
  const double a_norm = a / std::sqrt(sigma);
  // K^2 = sum over nonzero modes of |k|^{-2s} e^{2(a_l1 - a_norm)|k|^{1/sigma}}
  double k2 = 0.0;
  for (std::size_t idx = 0; idx < g->size(); ++idx) {
    const double kk = g->k_abs(idx);
    if (kk == 0.0) continue;
    k2 += std::pow(kk, -2.0 * s) *
          std::exp(2.0 * (a_l1 - a_norm) * std::pow(kk, 1.0 / sigma));
  }
  const double K = std::sqrt(k2);
  for (std::uint64_t seed : {51ULL, 52ULL, 53ULL}) {
    SpectralField f = random_scalar_field(seed, g, 1.0);
    CHECK(weighted_l1_norm(f, a_l1, sigma) <=
          K * weighted_norm(f, a_norm, sigma, s) * (1.0 + 1e-9));
  }
}
