#include "bsq/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsq/spectral_ops.hpp"

namespace bsq {

std::vector<double> semigroup_multiplier(const FourierGrid& grid, double t, double gamma) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup_multiplier: t must be >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("semigroup_multiplier: gamma must be > 0");
  std::vector<double> w(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double lam = std::pow(grid.k_sq(idx), gamma);
    w[idx] = std::exp(-t * lam);
  }
  return w;
}

SpectralField apply_semigroup(const SpectralField& f, double t, double gamma) {
  const std::vector<double> w = semigroup_multiplier(*f.grid(), t, gamma);
  SpectralField out(f.grid(), f.components());
  const std::size_t m = f.modes();
  for (int c = 0; c < f.components(); ++c) {
    auto in = f.component(c);
    auto os = out.component(c);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      os[idx] = w[idx] * in[idx];
    }
  }
  return out;
}

CoupledState free_evolution(const CoupledState& x0, double t, const DissipationParams& d) {
  d.validate();
  CoupledState out(x0.grid(), x0.time + t);
  out.velocity = apply_semigroup(x0.velocity, t, d.alpha);
  out.temperature = apply_semigroup(x0.temperature, t, d.beta);
  out.time = x0.time + t;
  return out;
}

double trajectory_norm(const Trajectory& x, const GevreyParams& p) {
  double sup = 0.0;
  for (const auto& node : x.nodes) sup = std::max(sup, pair_norm(node, p));
  return sup;
}

// A(L, lam) = int_0^L e^{-q lam} dq, exact
double duhamel_weight_a(double L, double lam) {
  if (lam == 0.0) return L;
  return -std::expm1(-L * lam) / lam;
}

// B(L, lam) = int_0^L q e^{-q lam} dq, exact; series below x = 2e-3 to avoid
// the 1 - (1+x)e^{-x} cancellation
double duhamel_weight_b(double L, double lam) {
  const double x = L * lam;
  if (x < 2e-3) {
    return L * L * (0.5 + x * (-1.0 / 3.0 + x * (0.125 + x * (-1.0 / 30.0 + x / 144.0))));
  }
  return (1.0 - (1.0 + x) * std::exp(-x)) / (lam * lam);
}

namespace {

void check_duhamel_args(const std::vector<SpectralField>& forcing, double dt, double gamma) {
  if (forcing.empty()) throw std::invalid_argument("duhamel: no forcing samples");
  if (!(dt > 0.0)) throw std::invalid_argument("duhamel: dt must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("duhamel: gamma must be > 0");
}

}  // namespace

SpectralField duhamel_integral(const std::vector<SpectralField>& forcing, double dt, double t,
                               double gamma) {
  check_duhamel_args(forcing, dt, gamma);
  const double t_max = dt * static_cast<double>(forcing.size() - 1);
  if (!(t >= 0.0) || t > t_max * (1.0 + 1e-12)) {
    throw std::invalid_argument("duhamel_integral: t outside the sampled range");
  }
  const GridPtr grid = forcing.front().grid();
  const FourierGrid& g = *grid;
  const int comps = forcing.front().components();
  SpectralField out(grid, comps);
  if (t == 0.0) return out;

  const std::size_t whole = std::min(static_cast<std::size_t>(t / dt), forcing.size() - 1);
  const double frac = t - static_cast<double>(whole) * dt;
  const std::size_t m = g.size();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double lam = std::pow(g.k_sq(idx), gamma);
    const double wa = duhamel_weight_a(dt, lam);
    const double wb = duhamel_weight_b(dt, lam);
    for (int c = 0; c < comps; ++c) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < whole; ++j) {
        // subinterval [j dt, (j+1) dt], full width; decay from its right end
        const double gap = t - static_cast<double>(j + 1) * dt;
        const double damp = std::exp(-gap * lam);
        const cplx f0 = forcing[j].at(c, idx);
        const cplx slope = (forcing[j + 1].at(c, idx) - f0) / dt;
        acc += damp * (f0 * wa + slope * (dt * wa - wb));
      }
      if (frac > 0.0 && whole + 1 < forcing.size()) {
        const cplx f0 = forcing[whole].at(c, idx);
        const cplx slope = (forcing[whole + 1].at(c, idx) - f0) / dt;
        const double wa_p = duhamel_weight_a(frac, lam);
        const double wb_p = duhamel_weight_b(frac, lam);
        acc += f0 * wa_p + slope * (frac * wa_p - wb_p);
      }
      out.at(c, idx) = acc;
    }
  }
  return out;
}

std::vector<SpectralField> duhamel_sweep(const std::vector<SpectralField>& forcing, double dt,
                                         double gamma) {
  check_duhamel_args(forcing, dt, gamma);
  const GridPtr grid = forcing.front().grid();
  const FourierGrid& g = *grid;
  const int comps = forcing.front().components();
  const std::size_t m = g.size();
  const std::size_t count = forcing.size();

  std::vector<SpectralField> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = SpectralField(grid, comps);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double lam = std::pow(g.k_sq(idx), gamma);
    const double decay = std::exp(-dt * lam);
    const double wa = duhamel_weight_a(dt, lam);
    const double wb = duhamel_weight_b(dt, lam);
    for (int c = 0; c < comps; ++c) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 1; j < count; ++j) {
        const cplx f0 = forcing[j - 1].at(c, idx);
        const cplx slope = (forcing[j].at(c, idx) - f0) / dt;
        acc = decay * acc + (f0 * wa + slope * (dt * wa - wb));
        out[j].at(c, idx) = acc;
      }
    }
  }
  return out;
}

namespace {

Trajectory duhamel_as_trajectory(std::vector<SpectralField> u_parts,
                                 std::vector<SpectralField> th_parts, double dt) {
  Trajectory out;
  out.dt = dt;
  out.nodes.resize(u_parts.size());
  for (std::size_t j = 0; j < u_parts.size(); ++j) {
    out.nodes[j].velocity = std::move(u_parts[j]);
    out.nodes[j].temperature = std::move(th_parts[j]);
    out.nodes[j].time = dt * static_cast<double>(j);
  }
  return out;
}

void check_pair(const Trajectory& x, const Trajectory& y) {
  if (x.nodes.empty() || y.nodes.empty()) throw std::invalid_argument("trajectory is empty");
  if (x.size() != y.size() || x.dt != y.dt) {
    throw std::invalid_argument("trajectory partitions differ");
  }
  if (x.grid().get() != y.grid().get()) throw std::invalid_argument("trajectory grids differ");
}

}  // namespace

Trajectory bilinear_B_sweep(const Trajectory& x, const Trajectory& y, const DissipationParams& d) {
  check_pair(x, y);
  d.validate();
  const std::size_t count = x.size();
  std::vector<SpectralField> f_u(count), f_th(count);
  for (std::size_t j = 0; j < count; ++j) {
    SpectralField adv_u = leray_project(nonlinear_advection(x.nodes[j].velocity,
                                                            y.nodes[j].velocity));
    SpectralField adv_th = nonlinear_advection(x.nodes[j].velocity, y.nodes[j].temperature);
    for (auto& v : adv_u.raw()) v = -v;
    for (auto& v : adv_th.raw()) v = -v;
    f_u[j] = std::move(adv_u);
    f_th[j] = std::move(adv_th);
  }
  return duhamel_as_trajectory(duhamel_sweep(f_u, x.dt, d.alpha),
                               duhamel_sweep(f_th, x.dt, d.beta), x.dt);
}

Trajectory linear_L_sweep(const Trajectory& x, const DissipationParams& d) {
  if (x.nodes.empty()) throw std::invalid_argument("trajectory is empty");
  d.validate();
  const GridPtr grid = x.grid();
  const std::size_t count = x.size();
  std::vector<SpectralField> f_u(count), f_th(count);
  for (std::size_t j = 0; j < count; ++j) {
    SpectralField lift(grid, 3);
    const auto th = x.nodes[j].temperature.component(0);
    auto dst = lift.component(2);
    for (std::size_t idx = 0; idx < grid->size(); ++idx) dst[idx] = th[idx];
    f_u[j] = leray_project(lift);
    f_th[j] = SpectralField(grid, 1);
  }
  return duhamel_as_trajectory(duhamel_sweep(f_u, x.dt, d.alpha),
                               duhamel_sweep(f_th, x.dt, d.beta), x.dt);
}

CoupledState bilinear_B(const Trajectory& x, const Trajectory& y, double t,
                        const DissipationParams& d) {
  check_pair(x, y);
  d.validate();
  const std::size_t count = x.size();
  std::vector<SpectralField> f_u(count), f_th(count);
  for (std::size_t j = 0; j < count; ++j) {
    SpectralField adv_u = leray_project(nonlinear_advection(x.nodes[j].velocity,
                                                            y.nodes[j].velocity));
    SpectralField adv_th = nonlinear_advection(x.nodes[j].velocity, y.nodes[j].temperature);
    for (auto& v : adv_u.raw()) v = -v;
    for (auto& v : adv_th.raw()) v = -v;
    f_u[j] = std::move(adv_u);
    f_th[j] = std::move(adv_th);
  }
  CoupledState out(x.grid(), t);
  out.velocity = duhamel_integral(f_u, x.dt, t, d.alpha);
  out.temperature = duhamel_integral(f_th, x.dt, t, d.beta);
  return out;
}

CoupledState linear_L(const Trajectory& x, double t, const DissipationParams& d) {
  if (x.nodes.empty()) throw std::invalid_argument("trajectory is empty");
  d.validate();
  const GridPtr grid = x.grid();
  const std::size_t count = x.size();
  std::vector<SpectralField> f_u(count);
  for (std::size_t j = 0; j < count; ++j) {
    SpectralField lift(grid, 3);
    const auto th = x.nodes[j].temperature.component(0);
    auto dst = lift.component(2);
    for (std::size_t idx = 0; idx < grid->size(); ++idx) dst[idx] = th[idx];
    f_u[j] = leray_project(lift);
  }
  CoupledState out(grid, t);
  out.velocity = duhamel_integral(f_u, x.dt, t, d.alpha);
  return out;
}

}  // namespace bsq
