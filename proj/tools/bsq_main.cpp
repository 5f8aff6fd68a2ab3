// Command-line front end. Science parameters live in the config file; the
// command line only picks the subcommand, the config, and the output
// directory. Exit codes: 0 success, 1 lemma verification failure, 2 config
// or file-format error, 3 numerical abort, 4 invalid certificate.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bsq/blowup.hpp"
#include "bsq/config.hpp"
#include "bsq/inequalities.hpp"
#include "bsq/integrator.hpp"
#include "bsq/picard.hpp"
#include "bsq/run_io.hpp"
#include "bsq/runtime.hpp"
#include "bsq/spectral_ops.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitLemmaFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCertificate = 4;

void usage(std::FILE* to) {
  std::fputs(
      "usage: bsq <subcommand> --config <file> [--out <dir>]\n"
      "\n"
      "subcommands:\n"
      "  certify        run the fixed-point construction and write a certificate\n"
      "  evolve         march the initial data to time.t_end, recording norms\n"
      "  monitor        post-process <out>/series.csv into blow-up diagnostics\n"
      "  verify-lemmas  sweep the analytic inequalities and trained constants\n"
      "  export         dump the checkpoint at init.path as a CSV of modes\n"
      "\n"
      "certify, evolve, monitor, and export require --out.\n",
      to);
}

struct CliArgs {
  std::string subcommand;
  std::string config;
  std::string out;
};

std::optional<CliArgs> parse_cli(int argc, char** argv) {
  if (argc < 2) return std::nullopt;
  CliArgs args;
  args.subcommand = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string flag = argv[i];
    if (flag == "--config" || flag == "--out") {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "error: %s requires a value\n", flag.c_str());
        return std::nullopt;
      }
      (flag == "--config" ? args.config : args.out) = argv[++i];
    } else {
      std::fprintf(stderr, "error: unexpected argument %s\n", flag.c_str());
      return std::nullopt;
    }
  }
  if (args.config.empty()) {
    std::fprintf(stderr, "error: --config is required\n");
    return std::nullopt;
  }
  return args;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bsq::CoupledState build_initial_state(const bsq::RunConfig& cfg) {
  if (cfg.init.kind == "checkpoint") {
    bsq::CoupledState x = bsq::read_checkpoint(cfg.init.path);
    if (x.grid()->n() != cfg.grid_n) {
      std::ostringstream os;
      os << "checkpoint grid " << x.grid()->n() << " does not match grid.n " << cfg.grid_n;
      throw std::invalid_argument(os.str());
    }
    return x;
  }
  bsq::GridPtr grid = bsq::make_grid(cfg.grid_n);
  if (cfg.init.kind == "single_mode")
    return bsq::single_mode_shear(grid, cfg.init.mode, cfg.init.amplitude);
  return bsq::random_divfree_state(cfg.init.seed, grid, cfg.init.decay, cfg.init.amplitude);
}

// config echo plus a small provenance note; everything that must be byte
// reproducible lives in the CSV and binary outputs instead
void write_run_preamble(const std::string& out_dir, const std::string& subcommand,
                        const bsq::RunConfig& cfg) {
  bsq::ensure_run_dir(out_dir);
  bsq::write_text((fs::path(out_dir) / "config.txt").string(), bsq::render_config(cfg));
  const char* cap = std::getenv("BSQ_THREADS");
  std::ostringstream meta;
  meta << "subcommand = " << subcommand << "\n";
  meta << "grid.n = " << cfg.grid_n << "\n";
  meta << "threads.cap = " << (cap ? cap : "unset") << "\n";
  bsq::write_text((fs::path(out_dir) / "meta.txt").string(), meta.str());
}

int run_certify(const bsq::RunConfig& cfg, const std::string& out_dir) {
  bsq::CoupledState x0 = build_initial_state(cfg);
  bsq::CertifyOptions opt;
  opt.constant_samples = cfg.constants_samples;
  opt.constant_seed = cfg.constants_seed;
  opt.constant_safety = cfg.constants_safety;
  opt.horizon = cfg.t_end;
  opt.time_nodes = cfg.time_nodes;
  opt.tol = cfg.picard_tol;
  opt.max_iter = cfg.max_iter;
  bsq::CertifyOutcome res = bsq::certify(x0, cfg.gevrey, cfg.dissipation, opt);

  write_run_preamble(out_dir, "certify", cfg);
  if (!res.trajectory.nodes.empty()) {
    res.certificate.trajectory_ref = "checkpoints/solution.bsqt";
    bsq::write_trajectory((fs::path(out_dir) / "checkpoints" / "solution.bsqt").string(),
                          res.trajectory);
  }
  bsq::write_text((fs::path(out_dir) / "reports" / "certificate.txt").string(),
                  bsq::certificate_text(res.certificate));
  bsq::write_text((fs::path(out_dir) / "reports" / "residuals.csv").string(),
                  bsq::residuals_csv(res.residuals));

  const bsq::ExistenceCertificate& c = res.certificate;
  std::printf("initial norm %s, horizon T = %s (admissible %s)\n", fmt(c.initial_norm).c_str(),
              fmt(c.T).c_str(), fmt(c.admissible_T).c_str());
  std::printf("small-data gate %s, converged %s after %d iterations, residual %s\n",
              c.small_data_check ? "passed" : "FAILED", c.converged ? "yes" : "NO", c.iterations,
              fmt(c.final_residual).c_str());
  std::printf("certificate %s\n", c.valid ? "valid" : "INVALID");
  return c.valid ? kExitOk : kExitCertificate;
}

int run_evolve(const bsq::RunConfig& cfg, const std::string& out_dir) {
  if (!(cfg.t_end > 0.0))
    throw std::invalid_argument("evolve needs time.t_end > 0");
  bsq::CoupledState x0 = build_initial_state(cfg);
  const double dt = cfg.dt > 0.0 ? cfg.dt : bsq::default_dt(*x0.grid(), cfg.dissipation);

  bsq::EvolveResult res =
      bsq::evolve(x0, cfg.t_end, dt, cfg.gevrey, cfg.dissipation, cfg.ladder_nmax);

  write_run_preamble(out_dir, "evolve", cfg);
  bsq::write_series((fs::path(out_dir) / "series.csv").string(), res.series);
  bsq::write_checkpoint((fs::path(out_dir) / "checkpoints" / "final.bsqg").string(),
                        res.final_state);

  const bsq::NormRecord& last = res.series.records.back();
  std::printf("dt = %s, %zu records, final time %s, final pair norm %s\n", fmt(dt).c_str(),
              res.series.records.size(), fmt(last.time).c_str(),
              fmt(last.gevrey_pair[0]).c_str());
  if (res.blowup_candidate) {
    std::printf("numerical abort: %s\n", res.abort_reason.c_str());
    return kExitNumerical;
  }
  return kExitOk;
}

std::string diagnostics_csv(const bsq::BlowupDiagnostics& diag) {
  const int nmax = diag.series.ladder_nmax;
  std::string out = "time";
  for (int j = 1; j <= nmax; ++j) out += ",gevrey_" + std::to_string(j);
  for (int j = 1; j <= nmax; ++j) out += ",functional_" + std::to_string(j);
  for (int j = 1; j <= nmax; ++j) out += ",integral_" + std::to_string(j);
  const bool env = !diag.envelope_values.empty();
  const bool cor = diag.corollary.has_value();
  if (env) out += ",envelope";
  if (cor) out += ",corollary_bound";
  out += "\n";
  for (std::size_t i = 0; i < diag.series.records.size(); ++i) {
    const bsq::NormRecord& r = diag.series.records[i];
    out += fmt(r.time);
    for (int j = 0; j < nmax; ++j) out += "," + fmt(r.gevrey_pair[j]);
    for (int j = 0; j < nmax; ++j) out += "," + fmt(diag.functionals[j][i]);
    for (int j = 0; j < nmax; ++j) out += "," + fmt(diag.integral_values[j][i]);
    if (env) out += "," + fmt(diag.envelope_values[i]);
    if (cor) out += "," + fmt(diag.corollary->bound[i]);
    out += "\n";
  }
  return out;
}

std::string monitor_summary(const bsq::BlowupDiagnostics& diag) {
  std::ostringstream os;
  const auto& rec = diag.series.records;
  os << "records = " << rec.size() << "\n";
  os << "t_first = " << fmt(rec.front().time) << "\n";
  os << "t_last = " << fmt(rec.back().time) << "\n";
  os << "envelope_c = " << fmt(diag.envelope_c) << "\n";
  if (diag.tstar) {
    os << "tstar = " << fmt(*diag.tstar) << "\n";
    os << "tstar_source = " << (diag.tstar_user ? "configured" : "extrapolated") << "\n";
  } else {
    os << "tstar = none\n";
  }
  if (diag.corollary) {
    os << "corollary.sigma0 = " << fmt(diag.corollary->exponents.sigma0) << "\n";
    os << "corollary.rho1 = " << fmt(diag.corollary->exponents.rho1) << "\n";
    os << "corollary.rho2 = " << fmt(diag.corollary->exponents.rho2) << "\n";
    os << "corollary.c1 = " << fmt(diag.corollary->c1) << "\n";
    os << "corollary.c2 = " << fmt(diag.corollary->c2) << "\n";
  } else {
    os << "corollary = none\n";
  }
  return os.str();
}

int run_monitor(const bsq::RunConfig& cfg, const std::string& out_dir) {
  bsq::NormSeries series = bsq::read_series((fs::path(out_dir) / "series.csv").string());

  bsq::MonitorOptions opt;
  opt.tstar = cfg.monitor_tstar;
  opt.mu = cfg.monitor_mu;
  opt.envelope_c = cfg.monitor_envelope_c;
  if (!(opt.envelope_c > 0.0))
    opt.envelope_c = bsq::default_envelope_constant(cfg.gevrey, cfg.dissipation,
                                                    bsq::make_grid(cfg.grid_n),
                                                    cfg.constants_samples, cfg.constants_seed,
                                                    cfg.constants_safety);

  bsq::BlowupDiagnostics diag = bsq::diagnose(series, cfg.gevrey, cfg.dissipation, opt);

  bsq::ensure_run_dir(out_dir);
  bsq::write_text((fs::path(out_dir) / "reports" / "diagnostics.csv").string(),
                  diagnostics_csv(diag));
  bsq::write_text((fs::path(out_dir) / "reports" / "monitor.txt").string(),
                  monitor_summary(diag));

  if (diag.tstar)
    std::printf("horizon %s at t* = %s, envelope rate %s\n",
                diag.tstar_user ? "configured" : "extrapolated", fmt(*diag.tstar).c_str(),
                fmt(diag.envelope_c).c_str());
  else
    std::printf("no blow-up horizon indicated (%zu records)\n", series.records.size());
  return kExitOk;
}

int run_export(const bsq::RunConfig& cfg, const std::string& out_dir) {
  if (cfg.init.path.empty())
    throw std::invalid_argument("export needs init.path to name a checkpoint");
  bsq::CoupledState x = bsq::read_checkpoint(cfg.init.path);
  bsq::ensure_run_dir(out_dir);
  bsq::write_text((fs::path(out_dir) / "state.csv").string(), bsq::state_csv(x));
  std::printf("exported %zu modes at t = %s\n", x.velocity.modes(), fmt(x.time).c_str());
  return kExitOk;
}

struct LemmaLine {
  std::string name;
  long violations = 0;
  double worst = 0.0;  // largest lhs/rhs ratio seen
};

int run_verify_lemmas(const bsq::RunConfig& cfg, const std::string& out_dir) {
  using bsq::Rng;
  const bsq::GevreyParams& p = cfg.gevrey;
  const bsq::DissipationParams& d = cfg.dissipation;
  bsq::GridPtr grid = bsq::make_grid(cfg.grid_n);
  std::vector<LemmaLine> lines;

  auto tally = [](LemmaLine& line, const bsq::InequalityReport& rep) {
    if (!rep.holds) ++line.violations;
    if (rep.ratio > line.worst) line.worst = rep.ratio;
  };

  // closed-form lemmas, purely scalar sweeps
  {
    LemmaLine line{"pointwise_decay"};
    Rng rng(bsq::derive_seed(cfg.constants_seed, 101));
    for (int i = 0; i < 20000; ++i) {
      const double pp = rng.uniform(0.05, 6.0);
      const double b = rng.uniform(0.01, 4.0);
      const double lam = rng.uniform(0.0, 50.0);
      tally(line, bsq::check_pointwise_decay(pp, b, lam));
    }
    lines.push_back(line);
  }
  {
    LemmaLine line{"exponent_triangle"};
    Rng rng(bsq::derive_seed(cfg.constants_seed, 102));
    for (int i = 0; i < 20000; ++i) {
      std::array<double, 3> xi{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0),
                               rng.uniform(-8.0, 8.0)};
      std::array<double, 3> eta{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0),
                                rng.uniform(-8.0, 8.0)};
      tally(line, bsq::check_exponent_triangle(xi, eta, rng.uniform(0.1, 3.0),
                                               rng.uniform(1.1, 4.0)));
    }
    lines.push_back(line);
  }
  {
    LemmaLine line{"interpolation"};
    Rng rng(bsq::derive_seed(cfg.constants_seed, 103));
    for (int i = 0; i < 200; ++i) {
      const bsq::SpectralField f = bsq::random_scalar_field(
          bsq::derive_seed(cfg.constants_seed, 1000 + i), grid, rng.uniform(0.5, 3.0), 1.0);
      tally(line, bsq::check_interpolation(f, p, rng.uniform(1.05, 4.0)));
    }
    lines.push_back(line);
  }

  // constant-bearing estimates: train on the configured sweep, validate on
  // fresh draws from the same family
  const std::uint64_t vseed = bsq::derive_seed(cfg.constants_seed, 0xbadc0ffe);
  auto draw = [&](std::uint64_t rng_seed, std::uint64_t field_seed) {
    Rng rng(rng_seed);
    return bsq::random_scalar_field(field_seed, grid, rng.uniform(0.5, 3.5), 1.0);
  };
  auto validate = [&](const std::string& which, auto&& check) {
    LemmaLine line{which};
    const bsq::ConstantEstimate c = bsq::estimate_constant(
        which, p, d, grid, cfg.constants_samples, cfg.constants_seed, cfg.constants_safety);
    for (long i = 0; i < cfg.constants_samples; ++i) {
      const bsq::SpectralField f =
          draw(bsq::derive_seed(vseed, 4 * i), bsq::derive_seed(vseed, 4 * i + 1));
      const bsq::SpectralField g =
          draw(bsq::derive_seed(vseed, 4 * i + 2), bsq::derive_seed(vseed, 4 * i + 3));
      tally(line, check(f, g, c));
    }
    lines.push_back(line);
  };

  validate("product", [&](const auto& f, const auto& g, const auto& c) {
    return bsq::check_product_estimate(f, g, p, c);
  });
  validate("product_interp_l1", [&](const auto& f, const auto& g, const auto& c) {
    return bsq::check_product_interp(f, g, p, d, bsq::ProductInterpVariant::l1_weighted, c);
  });
  validate("product_interp_norm", [&](const auto& f, const auto& g, const auto& c) {
    return bsq::check_product_interp(f, g, p, d, bsq::ProductInterpVariant::pure_norm, c);
  });
  validate("l1_interp", [&](const auto& f, const auto&, const auto& c) {
    return bsq::check_l1_interpolation(f, 2.0, c);
  });
  validate("embedding", [&](const auto& f, const auto&, const auto& c) {
    return bsq::check_embedding(f, p, 2.0, c);
  });

  std::ostringstream report;
  bool ok = true;
  for (const LemmaLine& line : lines) {
    ok = ok && line.violations == 0;
    report << line.name << ": violations = " << line.violations
           << ", worst ratio = " << fmt(line.worst) << "\n";
  }
  report << (ok ? "all inequalities verified\n" : "VERIFICATION FAILED\n");
  std::fputs(report.str().c_str(), stdout);
  if (!out_dir.empty()) {
    bsq::ensure_run_dir(out_dir);
    bsq::write_text((fs::path(out_dir) / "reports" / "lemmas.txt").string(), report.str());
  }
  return ok ? kExitOk : kExitLemmaFailure;
}

}  // namespace

int main(int argc, char** argv) {
  bsq::apply_thread_cap();
  std::optional<CliArgs> args = parse_cli(argc, argv);
  if (!args) {
    usage(stderr);
    return kExitConfig;
  }

  try {
    const bsq::RunConfig cfg = bsq::parse_config(args->config);
    const std::string& sub = args->subcommand;
    const bool needs_out = sub == "certify" || sub == "evolve" || sub == "monitor" ||
                           sub == "export";
    if (needs_out && args->out.empty()) {
      std::fprintf(stderr, "error: %s requires --out\n", sub.c_str());
      return kExitConfig;
    }

    if (sub == "certify") return run_certify(cfg, args->out);
    if (sub == "evolve") return run_evolve(cfg, args->out);
    if (sub == "monitor") return run_monitor(cfg, args->out);
    if (sub == "export") return run_export(cfg, args->out);
    if (sub == "verify-lemmas") return run_verify_lemmas(cfg, args->out);

    std::fprintf(stderr, "error: unknown subcommand %s\n", sub.c_str());
    usage(stderr);
    return kExitConfig;
  } catch (const bsq::NumericalBlowup& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
