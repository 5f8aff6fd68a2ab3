#include "bsq/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "bsq/spectral_ops.hpp"

namespace bsq {

namespace {

bool all_finite(const SpectralField& f) {
  for (const auto& v : f.raw()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

bool all_finite(const CoupledState& x) {
  return all_finite(x.velocity) && all_finite(x.temperature);
}

// forcing of the mild system: fu = P(theta e3 - u . grad u), fth = -u . grad theta
void forcing_of(const CoupledState& x, SpectralField& fu, SpectralField& fth) {
  fu = nonlinear_advection(x.velocity, x.velocity);
  for (auto& v : fu.raw()) v = -v;
  const auto th = x.temperature.component(0);
  auto lift = fu.component(2);
  for (std::size_t i = 0; i < th.size(); ++i) lift[i] += th[i];
  fu = leray_project(fu);
  fth = nonlinear_advection(x.velocity, x.temperature);
  for (auto& v : fth.raw()) v = -v;
}

}  // namespace

NormRecord sample_norms(const CoupledState& x, const GevreyParams& p, const DissipationParams& d,
                        int ladder_nmax) {
  p.validate();
  d.validate();
  if (ladder_nmax < 1) throw std::invalid_argument("sample_norms: ladder_nmax must be >= 1");
  NormRecord r;
  r.time = x.time;
  r.l2_pair = l2_pair_norm(x);
  r.gevrey_pair.reserve(static_cast<std::size_t>(ladder_nmax));
  r.weighted_l1.reserve(static_cast<std::size_t>(ladder_nmax));
  for (int n = 1; n <= ladder_nmax; ++n) {
    const LadderRadii rad = ladder_radii(p.a, p.sigma, n);
    r.gevrey_pair.push_back(pair_weighted_norm(x, rad.norm_radius, p.sigma, p.s));
    r.weighted_l1.push_back(pair_weighted_l1(x, rad.l1_radius, p.sigma));
  }
  r.u_dissipation = weighted_norm(x.velocity, p.a, p.sigma, p.s + d.alpha);
  r.th_dissipation = weighted_norm(x.temperature, p.a, p.sigma, p.s + d.beta);
  r.u_l2_dissipation = sobolev_norm(x.velocity, d.alpha);
  r.th_l2_dissipation = sobolev_norm(x.temperature, d.beta);
  return r;
}

double default_dt(const FourierGrid& grid, const DissipationParams& d) {
  d.validate();
  const double kmax = grid.max_retained_k_abs();
  const double worst =
      std::max(std::pow(kmax, 2.0 * d.alpha), std::pow(kmax, 2.0 * d.beta));
  return 0.25 / worst;
}

CoupledState etd_step(const CoupledState& x, double dt, const DissipationParams& d) {
  d.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("etd_step: dt must be > 0");
  if (!all_finite(x)) throw NumericalBlowup("etd_step: nonfinite input state");
  const FourierGrid& g = *x.grid();
  const std::size_t modes = g.size();

  SpectralField fu, fth;
  forcing_of(x, fu, fth);

  const std::vector<double> dec_u = semigroup_multiplier(g, dt, d.alpha);
  const std::vector<double> dec_th = semigroup_multiplier(g, dt, d.beta);
  std::vector<double> wa_u(modes), corr_u(modes), wa_th(modes), corr_th(modes);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(modes); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double lam_u = std::pow(g.k_sq(idx), d.alpha);
    const double lam_th = std::pow(g.k_sq(idx), d.beta);
    wa_u[idx] = duhamel_weight_a(dt, lam_u);
    wa_th[idx] = duhamel_weight_a(dt, lam_th);
    corr_u[idx] = wa_u[idx] - duhamel_weight_b(dt, lam_u) / dt;
    corr_th[idx] = wa_th[idx] - duhamel_weight_b(dt, lam_th) / dt;
  }

  // predictor: exponential Euler
  CoupledState pred(x.grid(), x.time + dt);
  for (int c = 0; c < 3; ++c) {
    const auto xs = x.velocity.component(c);
    const auto fs = fu.component(c);
    auto ps = pred.velocity.component(c);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(modes); ++i) {
      ps[static_cast<std::size_t>(i)] = dec_u[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)] +
                                        wa_u[static_cast<std::size_t>(i)] * fs[static_cast<std::size_t>(i)];
    }
  }
  {
    const auto xs = x.temperature.component(0);
    const auto fs = fth.component(0);
    auto ps = pred.temperature.component(0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(modes); ++i) {
      ps[static_cast<std::size_t>(i)] = dec_th[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)] +
                                        wa_th[static_cast<std::size_t>(i)] * fs[static_cast<std::size_t>(i)];
    }
  }

  // corrector: linear-in-tau closure of the forcing over the step
  SpectralField fu2, fth2;
  forcing_of(pred, fu2, fth2);
  CoupledState next = std::move(pred);
  for (int c = 0; c < 3; ++c) {
    const auto f0 = fu.component(c);
    const auto f1 = fu2.component(c);
    auto ns = next.velocity.component(c);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(modes); ++i) {
      ns[static_cast<std::size_t>(i)] += corr_u[static_cast<std::size_t>(i)] *
                                         (f1[static_cast<std::size_t>(i)] - f0[static_cast<std::size_t>(i)]);
    }
  }
  {
    const auto f0 = fth.component(0);
    const auto f1 = fth2.component(0);
    auto ns = next.temperature.component(0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(modes); ++i) {
      ns[static_cast<std::size_t>(i)] += corr_th[static_cast<std::size_t>(i)] *
                                         (f1[static_cast<std::size_t>(i)] - f0[static_cast<std::size_t>(i)]);
    }
  }

  apply_dealias(next.velocity);
  apply_dealias(next.temperature);
  zero_mean(next.velocity);
  zero_mean(next.temperature);
  if (!all_finite(next)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "etd_step: nonfinite coefficients after step to t = %.12g",
                  next.time);
    throw NumericalBlowup(buf);
  }
  return next;
}

EvolveResult evolve(const CoupledState& x0, double t_end, double dt, const GevreyParams& p,
                    const DissipationParams& d, int ladder_nmax, const StepCallback& on_step) {
  p.validate();
  d.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
  if (!(t_end >= 0.0)) throw std::invalid_argument("evolve: t_end must be >= 0");
  if (ladder_nmax < 1) throw std::invalid_argument("evolve: ladder_nmax must be >= 1");
  if (!all_finite(x0)) throw std::invalid_argument("evolve: nonfinite initial state");

  constexpr double kNormCeiling = 1e12;

  EvolveResult out;
  out.final_state = x0;
  out.series.ladder_nmax = ladder_nmax;

  CoupledState x = x0;
  if (on_step) on_step(x, 0);
  out.series.records.push_back(sample_norms(x, p, d, ladder_nmax));
  if (out.series.records.back().gevrey_pair[0] > kNormCeiling) {
    out.blowup_candidate = true;
    out.abort_reason = "initial pair norm above the blow-up ceiling";
    return out;
  }

  const long full_steps = static_cast<long>(std::floor(t_end / dt + 1e-12));
  const double tail = t_end - static_cast<double>(full_steps) * dt;
  const bool has_tail = tail > dt * 1e-9;
  const long total = full_steps + (has_tail ? 1 : 0);

  for (long j = 1; j <= total; ++j) {
    const double h = (j <= full_steps) ? dt : tail;
    try {
      x = etd_step(x, h, d);
    } catch (const NumericalBlowup& e) {
      out.blowup_candidate = true;
      out.abort_reason = e.what();
      return out;  // final_state stays at the last finite state
    }
    if (on_step) on_step(x, j);
    out.series.records.push_back(sample_norms(x, p, d, ladder_nmax));
    out.final_state = x;
    if (out.series.records.back().gevrey_pair[0] > kNormCeiling) {
      out.blowup_candidate = true;
      out.abort_reason = "pair norm crossed the blow-up ceiling";
      return out;
    }
  }
  return out;
}

}  // namespace bsq
