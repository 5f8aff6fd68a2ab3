#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bsq/norms.hpp"

namespace bsq {

// Initial-data selection: a seeded random divergence-free state, a single
// shear mode, or a checkpoint file.
struct InitSpec {
  std::string kind = "random_divfree";  // random_divfree | single_mode | checkpoint
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  double decay = 2.0;                   // spectrum decay of the random draw
  std::array<int, 3> mode{0, 0, 2};     // wavevector of the single-mode shear
  std::string path;                     // checkpoint source
};

// One flat configuration for every subcommand. Science parameters live only
// here; command lines select the subcommand, config path, and output
// directory.
struct RunConfig {
  int grid_n = 16;
  GevreyParams gevrey{1.0, 2.0, 0.5};
  DissipationParams dissipation{1.0, 1.0};
  double dt = 0.0;     // 0: use the retained-band default
  double t_end = 0.0;  // certify: 0 falls back to the closed-form admissible horizon
  int time_nodes = 64;
  InitSpec init;
  int ladder_nmax = 4;
  std::uint64_t constants_seed = 1;
  int constants_samples = 200;
  double constants_safety = 1.5;
  double picard_tol = 1e-10;
  int max_iter = 64;
  double monitor_tstar = 0.0;       // 0: extrapolate
  double monitor_envelope_c = 0.0;  // 0: train the default rate
  double monitor_mu = 1.6;
};

// Grammar: one `section.key = value` per line, `#` starts a comment, blank
// lines ignored. Unknown keys, duplicates, and malformed values are errors
// tagged with the line number; range violations are aggregated into a single
// error listing every bad key.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config(const std::string& path);

// Full echo with every key explicit; reparsing the echo reproduces the
// config byte-for-byte.
std::string render_config(const RunConfig& cfg);

}  // namespace bsq
