#include "bsq/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bsq/spectral_ops.hpp"

namespace bsq {

namespace {

void require_admissible_state(const CoupledState& x0) {
  if (relative_divergence(x0.velocity) > 1e-8) {
    throw std::invalid_argument("picard: initial velocity must be divergence-free");
  }
  const std::size_t zero = x0.grid()->index_of_wavenumber({0, 0, 0});
  for (int c = 0; c < 3; ++c) {
    if (x0.velocity.at(c, zero) != cplx{0.0, 0.0}) {
      throw std::invalid_argument("picard: initial velocity must be mean-free");
    }
  }
  if (x0.temperature.at(0, zero) != cplx{0.0, 0.0}) {
    throw std::invalid_argument("picard: initial temperature must be mean-free");
  }
}

Trajectory free_trajectory(const CoupledState& x0, const DissipationParams& d, double dt,
                           int nodes) {
  Trajectory t;
  t.dt = dt;
  t.nodes.reserve(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    t.nodes.push_back(free_evolution(x0, dt * static_cast<double>(j), d));
  }
  return t;
}

Trajectory zero_like(const Trajectory& ref) {
  Trajectory t;
  t.dt = ref.dt;
  t.nodes.reserve(ref.size());
  for (const auto& node : ref.nodes) t.nodes.emplace_back(node.grid(), node.time);
  return t;
}

void add_into(Trajectory& acc, const Trajectory& inc) {
  for (std::size_t j = 0; j < acc.size(); ++j) {
    auto& av = acc.nodes[j].velocity.raw();
    const auto& iv = inc.nodes[j].velocity.raw();
    for (std::size_t m = 0; m < av.size(); ++m) av[m] += iv[m];
    auto& at = acc.nodes[j].temperature.raw();
    const auto& it = inc.nodes[j].temperature.raw();
    for (std::size_t m = 0; m < at.size(); ++m) at[m] += it[m];
  }
}

double sup_gap(const Trajectory& x, const Trajectory& y, const GevreyParams& p) {
  double worst = 0.0;
  CoupledState diff(x.grid());
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t m = 0; m < diff.velocity.raw().size(); ++m) {
      diff.velocity.raw()[m] = x.nodes[j].velocity.raw()[m] - y.nodes[j].velocity.raw()[m];
    }
    for (std::size_t m = 0; m < diff.temperature.raw().size(); ++m) {
      diff.temperature.raw()[m] = x.nodes[j].temperature.raw()[m] - y.nodes[j].temperature.raw()[m];
    }
    worst = std::max(worst, pair_norm(diff, p));
  }
  return worst;
}

// iterate a -> affine + B(a,a) + L(a) starting from `current`
PicardResult run_fixed_point(const Trajectory& affine, Trajectory current, const GevreyParams& p,
                             const DissipationParams& d, double tol, int max_iter) {
  PicardResult out;
  for (int m = 0; m < max_iter; ++m) {
    Trajectory next = affine;
    add_into(next, bilinear_B_sweep(current, current, d));
    add_into(next, linear_L_sweep(current, d));
    const double res = sup_gap(next, current, p);
    out.residuals.push_back(res);
    current = std::move(next);
    out.iterations = m + 1;
    if (res < tol) {
      out.converged = true;
      break;
    }
  }
  out.trajectory = std::move(current);
  return out;
}

}  // namespace

double existence_time(const GevreyParams& p, const DissipationParams& d, double initial_norm,
                      double C) {
  p.validate();
  d.validate();
  if (!(C > 0.0)) throw std::invalid_argument("existence_time: constant must be > 0");
  if (!(initial_norm >= 0.0)) throw std::invalid_argument("existence_time: negative norm");
  const double bracket = std::sqrt(8.0 * C * initial_norm) + 1.0;
  const double ta = std::pow(bracket, -4.0 * d.alpha / (2.0 * d.alpha - 1.0));
  const double tb = std::pow(bracket, -4.0 * d.beta / (2.0 * d.beta - 1.0));
  return 0.99 * std::min(ta, tb);
}

PicardResult picard_iterate(const CoupledState& x0, const GevreyParams& p,
                            const DissipationParams& d, double T, int time_nodes, double tol,
                            int max_iter) {
  p.validate();
  d.validate();
  if (!(T > 0.0)) throw std::invalid_argument("picard_iterate: T must be > 0");
  if (time_nodes < 2) throw std::invalid_argument("picard_iterate: need at least two time nodes");
  if (!(tol > 0.0)) throw std::invalid_argument("picard_iterate: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("picard_iterate: max_iter must be >= 1");
  require_admissible_state(x0);
  const double dt = T / static_cast<double>(time_nodes - 1);
  Trajectory affine = free_trajectory(x0, d, dt, time_nodes);
  Trajectory start = affine;
  return run_fixed_point(affine, std::move(start), p, d, tol, max_iter);
}

CertifyOutcome certify(const CoupledState& x0, const GevreyParams& p, const DissipationParams& d,
                       const CertifyOptions& opt) {
  p.validate();
  if (!(p.a > 0.0)) throw std::invalid_argument("certify: needs a > 0");
  d.validate();
  if (opt.time_nodes < 2) throw std::invalid_argument("certify: need at least two time nodes");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("certify: tol must be > 0");
  if (opt.max_iter < 1) throw std::invalid_argument("certify: max_iter must be >= 1");
  if (!(opt.horizon >= 0.0)) throw std::invalid_argument("certify: negative horizon");
  require_admissible_state(x0);

  CertifyOutcome out;
  ExistenceCertificate& cert = out.certificate;
  cert.gevrey = p;
  cert.dissipation = d;
  cert.grid_n = x0.grid()->n();
  cert.initial_norm = pair_norm(x0, p);
  cert.time_nodes = opt.time_nodes;
  cert.tol = opt.tol;

  cert.bilinear_constant = estimate_constant("bilinear_b", p, d, x0.grid(), opt.constant_samples,
                                             opt.constant_seed, opt.constant_safety);
  const double chat = cert.bilinear_constant.value;
  cert.admissible_T = existence_time(p, d, cert.initial_norm, chat);
  cert.T = opt.horizon > 0.0 ? opt.horizon : cert.admissible_T;

  const double shape = std::pow(cert.T, 1.0 - 0.5 / d.alpha) + std::pow(cert.T, 1.0 - 0.5 / d.beta);
  cert.linear_constant = cert.T;
  cert.quadratic_constant = chat * shape;
  const double margin = 1.0 - cert.linear_constant;
  cert.small_data_check =
      cert.T < 1.0 && 4.0 * cert.quadratic_constant * cert.initial_norm < margin * margin;
  cert.lemma_bound = cert.T < 1.0 ? 2.0 * cert.initial_norm / margin
                                  : std::numeric_limits<double>::infinity();
  cert.theorem_bound = (1.0 - cert.T) / (2.0 * chat * shape);

  if (!cert.small_data_check) {
    // gate failed: certificate stays invalid and nothing is iterated
    cert.final_residual = std::numeric_limits<double>::infinity();
    return out;
  }

  PicardResult fp = picard_iterate(x0, p, d, cert.T, opt.time_nodes, opt.tol, opt.max_iter);
  cert.converged = fp.converged;
  cert.iterations = fp.iterations;
  cert.final_residual = fp.residuals.empty() ? 0.0 : fp.residuals.back();
  double ratio = 0.0;
  for (std::size_t m = 1; m < fp.residuals.size(); ++m) {
    if (fp.residuals[m - 1] > 0.0) ratio = std::max(ratio, fp.residuals[m] / fp.residuals[m - 1]);
  }
  cert.contraction_ratio = ratio;
  cert.solution_norm = trajectory_norm(fp.trajectory, p);
  const double slack = 1.0 + 1e-6;
  cert.solution_norm_bound_ok = cert.solution_norm <= cert.lemma_bound * slack &&
                                cert.solution_norm <= cert.theorem_bound * slack;
  cert.valid = cert.small_data_check && cert.converged && cert.solution_norm_bound_ok;

  if (opt.uniqueness_probe) {
    const double dt = cert.T / static_cast<double>(opt.time_nodes - 1);
    Trajectory affine = free_trajectory(x0, d, dt, opt.time_nodes);
    PicardResult alt = run_fixed_point(affine, zero_like(affine), p, d, opt.tol, opt.max_iter);
    if (alt.converged) cert.uniqueness_gap = sup_gap(fp.trajectory, alt.trajectory, p);
  }

  out.trajectory = std::move(fp.trajectory);
  out.residuals = std::move(fp.residuals);
  return out;
}

}  // namespace bsq
