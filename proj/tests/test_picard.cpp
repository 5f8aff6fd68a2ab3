#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "bsq/picard.hpp"
#include "bsq/spectral_ops.hpp"
#include "helpers.hpp"

using namespace bsq;
using bsq::testing::max_abs;
using bsq::testing::rel_state_diff;

namespace {

double max_state_gap(const CoupledState& x, const CoupledState& y) {
  double worst = 0.0;
  for (std::size_t m = 0; m < x.velocity.raw().size(); ++m) {
    worst = std::max(worst, std::abs(x.velocity.raw()[m] - y.velocity.raw()[m]));
  }
  for (std::size_t m = 0; m < x.temperature.raw().size(); ++m) {
    worst = std::max(worst, std::abs(x.temperature.raw()[m] - y.temperature.raw()[m]));
  }
  return worst;
}

CoupledState scaled_state(const CoupledState& x, double c) {
  CoupledState out = x;
  for (auto& v : out.velocity.raw()) v *= c;
  for (auto& v : out.temperature.raw()) v *= c;
  return out;
}

}  // namespace

TEST_CASE("existence time follows the closed-form recipe") {
  const GevreyParams p{1.0, 2.0, 0.5};
  const DissipationParams ones{1.0, 1.0};

  const double root8 = std::sqrt(8.0) + 1.0;
  CHECK(existence_time(p, ones, 1.0, 1.0) ==
        doctest::Approx(0.99 * std::pow(root8, -4.0)).epsilon(1e-15));
  CHECK(existence_time(p, ones, 0.0, 1.0) == 0.99);
  CHECK(existence_time(p, ones, 0.0, 123.0) == 0.99);

  // the smaller branch wins: alpha = 1 gives exponent -4, beta = 2 gives -8/3
  const DissipationParams mixed{1.0, 2.0};
  const double bracket = std::sqrt(8.0 * 2.0 * 0.7) + 1.0;
  const double expected = 0.99 * std::pow(bracket, -4.0);
  CHECK(existence_time(p, mixed, 0.7, 2.0) == doctest::Approx(expected).epsilon(1e-15));

  double prev = existence_time(p, ones, 0.0, 1.0);
  for (double norm : {0.1, 0.5, 2.0, 10.0}) {
    const double t = existence_time(p, ones, norm, 1.0);
    CHECK(t < prev);
    prev = t;
  }
  prev = existence_time(p, ones, 1.0, 1e-3);
  for (double c : {0.1, 1.0, 7.0}) {
    const double t = existence_time(p, ones, 1.0, c);
    CHECK(t < prev);
    prev = t;
  }

  CHECK_THROWS_AS(existence_time(p, ones, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(existence_time(p, ones, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("zero data is an exact fixed point") {
  auto g = make_grid(8);
  const GevreyParams p{1.0, 2.0, 0.5};
  const DissipationParams d{1.0, 1.0};
  CoupledState x0(g);

  const auto r = picard_iterate(x0, p, d, 0.5, 9, 1e-10, 8);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  REQUIRE(r.residuals.size() == 1);
  CHECK(r.residuals[0] == 0.0);
  for (const auto& node : r.trajectory.nodes) {
    CHECK(max_abs(node.velocity) == 0.0);
    CHECK(max_abs(node.temperature) == 0.0);
  }
}

TEST_CASE("shear data with zero temperature keeps the free evolution exactly") {
  auto g = make_grid(16);
  const GevreyParams p{1.0, 2.0, 0.5};
  const DissipationParams d{1.0, 1.3};

  // u0 a single shear mode: the self-advection cancels mode by mode, theta0
  // is zero, so the affine term is already the fixed point
  CoupledState x0 = single_mode_shear(g, {0, 0, 2}, 0.6);
  const auto r = picard_iterate(x0, p, d, 0.4, 9, 1e-10, 8);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.residuals[0] == 0.0);
  for (std::size_t j = 0; j < r.trajectory.size(); ++j) {
    const CoupledState free = free_evolution(x0, r.trajectory.dt * double(j), d);
    CHECK(max_state_gap(r.trajectory.nodes[j], free) == 0.0);
  }

  // add a temperature mode the flow can never advect (every generated
  // velocity mode keeps k1 = 0 and u2 = 0): theta stays exactly free, but
  // the buoyancy lift pushes the velocity off its free evolution
  const std::size_t kth = g->index_of_wavenumber({0, 1, 0});
  x0.temperature.at(0, kth) = cplx{0.3, -0.2};
  x0.temperature.at(0, g->conj_index(kth)) = cplx{0.3, 0.2};
  const auto r2 = picard_iterate(x0, p, d, 0.4, 9, 1e-10, 16);
  CHECK(r2.converged);
  CHECK(r2.residuals[0] > 1e-6);
  bool velocity_moved = false;
  for (std::size_t j = 1; j < r2.trajectory.size(); ++j) {
    const CoupledState free = free_evolution(x0, r2.trajectory.dt * double(j), d);
    double th_gap = 0.0;
    for (std::size_t m = 0; m < free.temperature.raw().size(); ++m) {
      th_gap = std::max(th_gap, std::abs(r2.trajectory.nodes[j].temperature.raw()[m] -
                                         free.temperature.raw()[m]));
    }
    CHECK(th_gap == 0.0);
    if (max_state_gap(r2.trajectory.nodes[j], free) > 1e-12) velocity_moved = true;
  }
  CHECK(velocity_moved);
}

TEST_CASE("certification of small random data") {
  auto g = make_grid(16);
  const GevreyParams p{1.0, 2.0, 0.5};
  const DissipationParams d{1.0, 1.0};
  const CoupledState x0 = random_divfree_state(404, g, 2.0, 1e-3);

  CertifyOptions opt;
  opt.constant_samples = 100;
  opt.constant_seed = 17;
  opt.constant_safety = 1.5;
  opt.time_nodes = 33;

  const auto out = certify(x0, p, d, opt);
  const auto& cert = out.certificate;

  CHECK(cert.small_data_check);
  CHECK(cert.converged);
  CHECK(cert.valid);
  CHECK(cert.T == cert.admissible_T);
  CHECK(cert.T < 1.0);
  CHECK(cert.linear_constant == cert.T);
  CHECK(cert.final_residual < 1e-10);
  CHECK(cert.contraction_ratio > 0.0);
  CHECK(cert.contraction_ratio < 1.0);
  CHECK(cert.solution_norm <= cert.lemma_bound * (1.0 + 1e-6));
  CHECK(cert.solution_norm <= cert.theorem_bound * (1.0 + 1e-6));
  CHECK(cert.solution_norm_bound_ok);
  CHECK(cert.uniqueness_gap >= 0.0);
  CHECK(cert.uniqueness_gap <= 10.0 * opt.tol);
  CHECK(cert.grid_n == 16);
  CHECK(cert.initial_norm == pair_norm(x0, p));
  CHECK(cert.bilinear_constant.which == "bilinear_b");
  CHECK(cert.bilinear_constant.safety == 1.5);
  REQUIRE(out.trajectory.size() == 33);
  CHECK(out.residuals.size() == std::size_t(cert.iterations));

  // residuals decay geometrically from the first correction on
  for (std::size_t m = 1; m < out.residuals.size(); ++m) {
    CHECK(out.residuals[m] < out.residuals[m - 1]);
  }

  // deterministic end to end
  const auto again = certify(x0, p, d, opt);
  CHECK(again.certificate.T == cert.T);
  CHECK(again.certificate.final_residual == cert.final_residual);
  CHECK(again.certificate.solution_norm == cert.solution_norm);
  CHECK(again.certificate.uniqueness_gap == cert.uniqueness_gap);
  double traj_gap = 0.0;
  for (std::size_t j = 0; j < out.trajectory.size(); ++j) {
    traj_gap = std::max(traj_gap, max_state_gap(out.trajectory.nodes[j], again.trajectory.nodes[j]));
  }
  CHECK(traj_gap == 0.0);
}

TEST_CASE("certification gates and horizons") {
  auto g = make_grid(16);
  const GevreyParams p{1.0, 2.0, 0.5};
  const DissipationParams d{1.0, 1.0};
  const CoupledState x0 = random_divfree_state(404, g, 2.0, 1e-3);

  CertifyOptions opt;
  opt.constant_samples = 100;
  opt.constant_seed = 17;
  opt.time_nodes = 17;

  // a fixed horizon makes the gate genuinely binding: blow the data up
  // a million-fold and certification must refuse before iterating
  CertifyOptions fixed = opt;
  fixed.horizon = 0.5;
  const auto big = certify(scaled_state(x0, 1e6), p, d, fixed);
  CHECK_FALSE(big.certificate.small_data_check);
  CHECK_FALSE(big.certificate.valid);
  CHECK(big.certificate.iterations == 0);
  CHECK(big.trajectory.nodes.empty());
  CHECK(std::isinf(big.certificate.final_residual));

  // the closed-form horizon passes its own gate for any data size
  const auto adm = certify(scaled_state(x0, 1e6), p, d, opt);
  CHECK(adm.certificate.small_data_check);
  CHECK(adm.certificate.T == adm.certificate.admissible_T);
  CHECK(adm.certificate.T < 0.1);

  // explicit horizon is honored and recorded next to the admissible one
  CertifyOptions horizon = opt;
  horizon.horizon = 0.25;
  const auto fix = certify(x0, p, d, horizon);
  CHECK(fix.certificate.T == 0.25);
  CHECK(fix.certificate.admissible_T > 0.25);
  CHECK(fix.certificate.valid);

  // zero data certifies trivially
  const auto zero = certify(CoupledState(g), p, d, opt);
  CHECK(zero.certificate.valid);
  CHECK(zero.certificate.solution_norm == 0.0);
  CHECK(zero.certificate.uniqueness_gap == 0.0);
}

TEST_CASE("picard and certify reject malformed input") {
  auto g = make_grid(8);
  const GevreyParams p{1.0, 2.0, 0.5};
  const DissipationParams d{1.0, 1.0};
  CoupledState x0(g);

  CHECK_THROWS_AS(picard_iterate(x0, p, d, 0.0, 9, 1e-10, 8), std::invalid_argument);
  CHECK_THROWS_AS(picard_iterate(x0, p, d, 0.5, 1, 1e-10, 8), std::invalid_argument);
  CHECK_THROWS_AS(picard_iterate(x0, p, d, 0.5, 9, 0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(picard_iterate(x0, p, d, 0.5, 9, 1e-10, 0), std::invalid_argument);

  // compressible or non-mean-free data is refused
  CoupledState bad(g);
  const std::size_t k1 = g->index_of_wavenumber({1, 0, 0});
  bad.velocity.at(0, k1) = cplx{1.0, 0.0};
  bad.velocity.at(0, g->conj_index(k1)) = cplx{1.0, 0.0};
  CHECK_THROWS_AS(picard_iterate(bad, p, d, 0.5, 9, 1e-10, 8), std::invalid_argument);

  CoupledState mean(g);
  mean.temperature.at(0, g->index_of_wavenumber({0, 0, 0})) = cplx{0.1, 0.0};
  CHECK_THROWS_AS(picard_iterate(mean, p, d, 0.5, 9, 1e-10, 8), std::invalid_argument);

  CHECK_THROWS_AS(certify(x0, GevreyParams{0.0, 2.0, 0.5}, d, CertifyOptions{}),
                  std::invalid_argument);
  CertifyOptions bad_opt;
  bad_opt.horizon = -1.0;
  CHECK_THROWS_AS(certify(x0, p, d, bad_opt), std::invalid_argument);
}
