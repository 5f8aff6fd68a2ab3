#include "bsq/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsq/inequalities.hpp"

namespace bsq {

namespace {

void require_regime(const DissipationParams& d) {
  d.validate();
  if (d.alpha < 1.0 || d.beta < 1.0) {
    throw std::invalid_argument("blow-up functionals need alpha >= 1 and beta >= 1");
  }
}

double functional_value(double w, const DissipationParams& d) {
  return std::pow(w, growth_exponent(d.alpha)) + std::pow(w, growth_exponent(d.beta));
}

void require_series(const NormSeries& series, int level) {
  if (series.records.empty()) throw std::invalid_argument("norm series is empty");
  if (level < 1 || level > series.ladder_nmax) {
    throw std::invalid_argument("ladder level outside the recorded range");
  }
  const auto expected = static_cast<std::size_t>(series.ladder_nmax);
  for (std::size_t j = 0; j < series.records.size(); ++j) {
    const NormRecord& r = series.records[j];
    if (r.gevrey_pair.size() != expected || r.weighted_l1.size() != expected) {
      throw std::invalid_argument("norm record ladder width does not match ladder_nmax");
    }
    if (j > 0 && r.time < series.records[j - 1].time) {
      throw std::invalid_argument("norm series times must be nondecreasing");
    }
  }
}

// running trapezoid integral of per-record values, cumulative[0] = 0
std::vector<double> running_trapezoid(const std::vector<const NormRecord*>& recs,
                                      const std::vector<double>& values) {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t j = 1; j < values.size(); ++j) {
    const double h = recs[j]->time - recs[j - 1]->time;
    out[j] = out[j - 1] + 0.5 * (values[j] + values[j - 1]) * h;
  }
  return out;
}

struct FitWindow {
  std::size_t begin = 0;  // first record with t >= t_first + 0.75 span
  double span = 0.0;
};

FitWindow fit_window(const NormSeries& series) {
  FitWindow w;
  const double t_first = series.records.front().time;
  const double t_last = series.records.back().time;
  w.span = t_last - t_first;
  const double cut = t_first + 0.75 * w.span;
  w.begin = series.records.size();
  for (std::size_t j = 0; j < series.records.size(); ++j) {
    if (series.records[j].time >= cut) {
      w.begin = j;
      break;
    }
  }
  return w;
}

}  // namespace

double blowup_functional(const CoupledState& x, const GevreyParams& p, const DissipationParams& d,
                         int n) {
  p.validate();
  require_regime(d);
  const LadderRadii rad = ladder_radii(p.a, p.sigma, n);
  return functional_value(pair_weighted_l1(x, rad.l1_radius, p.sigma), d);
}

double envelope(double t, double tstar, double c) {
  if (!(t >= 0.0)) throw std::invalid_argument("envelope: t must be >= 0");
  if (!(t < tstar)) throw std::invalid_argument("envelope: t must be below tstar");
  if (!(c > 0.0)) throw std::invalid_argument("envelope: rate must be > 0");
  return 1.0 / std::expm1(c * (tstar - t));
}

double integral_criterion(const NormSeries& series, double t, int n, const DissipationParams& d) {
  require_regime(d);
  require_series(series, n);
  const auto& recs = series.records;
  const double t_first = recs.front().time;
  const double t_last = recs.back().time;
  if (!(t >= t_first) || !(t <= t_last)) {
    throw std::invalid_argument("integral_criterion: t outside the recorded coverage");
  }

  const auto lvl = static_cast<std::size_t>(n - 1);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < recs.size(); ++j) {
    const double t0 = recs[j].time;
    const double t1 = recs[j + 1].time;
    if (t1 <= t) continue;
    const double f0 = functional_value(recs[j].weighted_l1[lvl], d);
    const double f1 = functional_value(recs[j + 1].weighted_l1[lvl], d);
    if (t0 >= t) {
      total += 0.5 * (f0 + f1) * (t1 - t0);
    } else {
      // segment straddles the start point: interpolate the integrand at t
      const double lam = (t - t0) / (t1 - t0);
      const double ft = f0 + (f1 - f0) * lam;
      total += 0.5 * (ft + f1) * (t1 - t);
    }
  }
  return total;
}

CorollaryExponents corollary_exponents(const GevreyParams& p, double alpha, double mu) {
  p.validate();
  if (!(alpha >= 1.0)) {
    throw std::invalid_argument("corollary_exponents: equal-order regime needs alpha >= 1");
  }
  if (!(mu > 1.5)) throw std::invalid_argument("corollary_exponents: mu must exceed 3/2");
  CorollaryExponents e;
  e.sigma0 = std::floor(2.0 * p.sigma * mu) / 2.0;
  e.rho1 = (1.0 - 2.0 * alpha) * (2.0 * (p.s * p.sigma + e.sigma0) + 1.0) /
           (6.0 * alpha * p.sigma);
  e.rho2 = (1.0 - 2.0 * alpha) / (3.0 * alpha * p.sigma);
  return e;
}

double corollary_bound(double t, double tstar, double c1, double c2, double rho1, double rho2) {
  if (!(t >= 0.0) || !(t < tstar)) {
    throw std::invalid_argument("corollary_bound: need 0 <= t < tstar");
  }
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw std::invalid_argument("corollary_bound: rates must be > 0");
  }
  if (!(rho1 < 0.0) || !(rho2 < 0.0)) {
    throw std::invalid_argument("corollary_bound: exponents must be negative");
  }
  const double bracket = std::expm1(c1 * (tstar - t));
  return std::pow(bracket, rho1) * std::exp(c2 * std::pow(bracket, rho2));
}

std::optional<double> estimate_tstar(const NormSeries& series, const DissipationParams& d) {
  d.validate();
  require_series(series, 1);
  const auto& recs = series.records;
  if (recs.size() < 8) return std::nullopt;

  const FitWindow w = fit_window(series);
  if (!(w.span > 0.0)) return std::nullopt;
  if (recs.back().gevrey_pair[0] <= recs.front().gevrey_pair[0]) return std::nullopt;

  // least squares on y = pair_norm^{-q_alpha}, which decays linearly to zero
  // at the horizon for the saturating profile
  const double q = growth_exponent(d.alpha);
  double n_pts = 0.0, st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t j = w.begin; j < recs.size(); ++j) {
    const double y = std::pow(recs[j].gevrey_pair[0], -q);
    if (!std::isfinite(y)) return std::nullopt;
    const double t = recs[j].time;
    n_pts += 1.0;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  if (n_pts < 2.0) return std::nullopt;
  const double det = n_pts * stt - st * st;
  if (!(std::abs(det) > 0.0)) return std::nullopt;
  const double slope = (n_pts * sty - st * sy) / det;
  const double intercept = (sy * stt - st * sty) / det;
  if (!(slope < 0.0)) return std::nullopt;

  const double crossing = -intercept / slope;
  const double t_last = recs.back().time;
  if (!(crossing > t_last) || !(crossing <= t_last + 10.0 * w.span)) return std::nullopt;
  return crossing;
}

double ladder_descent_constant(const FourierGrid& grid, const GevreyParams& p, int n) {
  p.validate();
  const double r1 = ladder_radii(p.a, p.sigma, n).l1_radius;
  const double r2 = ladder_radii(p.a, p.sigma, n + 1).norm_radius;
  double sum = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (!grid.dealias_mask(idx)) continue;
    const double ksq = grid.k_sq(idx);
    if (ksq == 0.0) continue;
    sum += std::pow(ksq, -p.s) *
           std::exp(2.0 * (r1 - r2) * std::pow(ksq, 0.5 / p.sigma));
  }
  return std::sqrt(sum);
}

double default_envelope_constant(const GevreyParams& p, const DissipationParams& d,
                                 const GridPtr& grid, int samples, std::uint64_t seed,
                                 double safety) {
  require_regime(d);
  const double q = std::max(growth_exponent(d.alpha), growth_exponent(d.beta));
  return q * estimate_constant("l1_growth", p, d, grid, samples, seed, safety).value;
}

BlowupDiagnostics diagnose(const NormSeries& series, const GevreyParams& p,
                           const DissipationParams& d, const MonitorOptions& opt) {
  p.validate();
  require_regime(d);
  require_series(series, 1);
  if (!(opt.envelope_c > 0.0)) {
    throw std::invalid_argument("diagnose: envelope_c must be > 0 (train or configure it)");
  }
  if (!(opt.mu > 1.5)) throw std::invalid_argument("diagnose: mu must exceed 3/2");
  if (!(opt.tstar >= 0.0)) throw std::invalid_argument("diagnose: tstar must be >= 0");

  const auto& recs = series.records;
  const double t_last = recs.back().time;

  BlowupDiagnostics out;
  out.series = series;
  out.envelope_c = opt.envelope_c;

  std::vector<const NormRecord*> ptrs;
  ptrs.reserve(recs.size());
  for (const auto& r : recs) ptrs.push_back(&r);

  out.functionals.resize(static_cast<std::size_t>(series.ladder_nmax));
  out.integral_values.resize(static_cast<std::size_t>(series.ladder_nmax));
  for (int lvl = 1; lvl <= series.ladder_nmax; ++lvl) {
    auto& f = out.functionals[static_cast<std::size_t>(lvl - 1)];
    f.reserve(recs.size());
    for (const auto& r : recs) {
      f.push_back(functional_value(r.weighted_l1[static_cast<std::size_t>(lvl - 1)], d));
    }
    out.integral_values[static_cast<std::size_t>(lvl - 1)] = running_trapezoid(ptrs, f);
  }

  if (opt.tstar > 0.0) {
    if (!(opt.tstar > t_last)) {
      throw std::invalid_argument("diagnose: a supplied tstar must exceed the last recorded time");
    }
    out.tstar = opt.tstar;
    out.tstar_user = true;
  } else {
    out.tstar = estimate_tstar(series, d);
  }
  if (!out.tstar) return out;

  const double horizon = *out.tstar;
  out.envelope_values.reserve(recs.size());
  for (const auto& r : recs) {
    out.envelope_values.push_back(envelope(r.time, horizon, opt.envelope_c));
  }

  if (d.alpha != d.beta) return out;

  // anchor the double-exponential curve where the extrapolation window opens
  const FitWindow w = fit_window(series);
  if (w.begin >= recs.size() || !(w.span > 0.0)) return out;
  const NormRecord& anchor = recs[w.begin];
  const double observed = anchor.gevrey_pair[0];
  if (!(observed > 0.0)) return out;

  CorollaryCurve curve;
  curve.c1 = opt.envelope_c;
  curve.exponents = corollary_exponents(p, d.alpha, opt.mu);
  const double bracket = std::expm1(curve.c1 * (horizon - anchor.time));
  curve.c2 = (std::log(observed) - curve.exponents.rho1 * std::log(bracket)) /
             std::pow(bracket, curve.exponents.rho2);
  if (!std::isfinite(curve.c2) || !(curve.c2 > 0.0)) return out;

  curve.bound.reserve(recs.size());
  for (const auto& r : recs) {
    curve.bound.push_back(corollary_bound(r.time, horizon, curve.c1, curve.c2,
                                          curve.exponents.rho1, curve.exponents.rho2));
  }
  out.corollary = curve;
  return out;
}

}  // namespace bsq
