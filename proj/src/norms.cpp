#include "bsq/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsq/runtime.hpp"

namespace bsq {

void GevreyParams::validate() const {
  std::string bad;
  if (!(a >= 0.0)) bad += " a>=0";
  if (!(sigma > 1.0)) bad += " sigma>1";
  if (!(s >= 0.0 && s < 1.5)) bad += " s in [0,1.5)";
  if (!bad.empty()) throw std::invalid_argument("GevreyParams: violated:" + bad);
}

void DissipationParams::validate() const {
  std::string bad;
  if (!(alpha > 0.5)) bad += " alpha>0.5";
  if (!(beta > 0.5)) bad += " beta>0.5";
  if (!bad.empty()) throw std::invalid_argument("DissipationParams: violated:" + bad);
}

double growth_exponent(double gamma) {
  if (!(gamma > 0.5)) throw std::invalid_argument("growth_exponent: gamma must be > 1/2");
  return 2.0 * gamma / (2.0 * gamma - 1.0);
}

namespace {

// weight-evaluated |c|^2 terms for one component, zero mode skipped
double quadratic_sum(const FourierGrid& g, std::span<const cplx> comp, double a, double sigma,
                     double s, double extra_pow) {
  const std::size_t m = g.size();
  std::vector<double> terms(m);
  const double inv_sigma = 1.0 / sigma;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double kk = g.k_abs(idx);
    if (kk == 0.0) {
      terms[idx] = 0.0;
      continue;
    }
    double w = std::exp(2.0 * a * std::pow(kk, inv_sigma));
    const double p = 2.0 * (s + extra_pow);
    if (p != 0.0) w *= std::pow(kk, p);
    terms[idx] = w * std::norm(comp[idx]);
  }
  return pairwise_sum(terms.data(), m);
}

double l1_sum(const FourierGrid& g, std::span<const cplx> comp, double a_eff, double sigma,
              double gamma) {
  const std::size_t m = g.size();
  std::vector<double> terms(m);
  const double inv_sigma = 1.0 / sigma;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double kk = g.k_abs(idx);
    if (kk == 0.0) {
      terms[idx] = 0.0;
      continue;
    }
    double w = std::exp(a_eff * std::pow(kk, inv_sigma));
    if (gamma != 0.0) w *= std::pow(kk, 2.0 * gamma);
    terms[idx] = w * std::abs(comp[idx]);
  }
  return pairwise_sum(terms.data(), m);
}

}  // namespace

double weighted_norm(const SpectralField& f, double a, double sigma, double s) {
  if (!(sigma > 1.0)) throw std::invalid_argument("weighted_norm: sigma must be > 1");
  if (!(a >= 0.0)) throw std::invalid_argument("weighted_norm: a must be >= 0");
  const FourierGrid& g = *f.grid();
  const double scale2 = g.mode_weight();
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    total += quadratic_sum(g, f.component(c), a, sigma, s, 0.0);
  }
  return std::sqrt(scale2 * total);
}

double gevrey_norm(const SpectralField& f, const GevreyParams& p) {
  p.validate();
  return weighted_norm(f, p.a, p.sigma, p.s);
}

double sobolev_norm(const SpectralField& f, double delta) {
  const FourierGrid& g = *f.grid();
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    total += quadratic_sum(g, f.component(c), 0.0, 2.0, delta, 0.0);
  }
  return std::sqrt(g.mode_weight() * total);
}

double weighted_l1_norm(const SpectralField& f, double a_eff, double sigma) {
  if (!(sigma > 1.0)) throw std::invalid_argument("weighted_l1_norm: sigma must be > 1");
  const FourierGrid& g = *f.grid();
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    total += l1_sum(g, f.component(c), a_eff, sigma, 0.0);
  }
  return g.spectral_scale() * total;
}

double weighted_l1_dissipation(const SpectralField& f, double a_eff, double sigma, double gamma) {
  const FourierGrid& g = *f.grid();
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    total += l1_sum(g, f.component(c), a_eff, sigma, gamma);
  }
  return g.spectral_scale() * total;
}

double weighted_inner(const SpectralField& f, const SpectralField& g_field, double a, double sigma,
                      double s) {
  if (f.components() != g_field.components() || f.grid().get() != g_field.grid().get()) {
    throw std::invalid_argument("weighted_inner: field layout mismatch");
  }
  const FourierGrid& g = *f.grid();
  const std::size_t m = g.size();
  std::vector<double> terms(m);
  const double inv_sigma = 1.0 / sigma;
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto fc = f.component(c);
    auto gc = g_field.component(c);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double kk = g.k_abs(idx);
      if (kk == 0.0) {
        terms[idx] = 0.0;
        continue;
      }
      double w = std::exp(2.0 * a * std::pow(kk, inv_sigma));
      if (s != 0.0) w *= std::pow(kk, 2.0 * s);
      terms[idx] = w * (fc[idx].real() * gc[idx].real() + fc[idx].imag() * gc[idx].imag());
    }
    total += pairwise_sum(terms.data(), m);
  }
  return g.mode_weight() * total;
}

double pair_weighted_norm(const CoupledState& x, double a, double sigma, double s) {
  const double nu = weighted_norm(x.velocity, a, sigma, s);
  const double nt = weighted_norm(x.temperature, a, sigma, s);
  return std::sqrt(nu * nu + nt * nt);
}

double pair_norm(const CoupledState& x, const GevreyParams& p) {
  p.validate();
  return pair_weighted_norm(x, p.a, p.sigma, p.s);
}

double l2_pair_norm(const CoupledState& x) { return pair_weighted_norm(x, 0.0, 2.0, 0.0); }

double pair_weighted_l1(const CoupledState& x, double a_eff, double sigma) {
  return weighted_l1_norm(x.velocity, a_eff, sigma) +
         weighted_l1_norm(x.temperature, a_eff, sigma);
}

LadderRadii ladder_radii(double a, double sigma, int n) {
  if (!(a >= 0.0)) throw std::invalid_argument("ladder_radii: a must be >= 0");
  if (!(sigma > 1.0)) throw std::invalid_argument("ladder_radii: sigma must be > 1");
  if (n < 1) throw std::invalid_argument("ladder_radii: level must be >= 1");
  const double norm_radius = a / std::pow(std::sqrt(sigma), static_cast<double>(n - 1));
  return {norm_radius, norm_radius / sigma};
}

}  // namespace bsq
