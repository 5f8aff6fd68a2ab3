#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bsq/config.hpp"
#include "doctest.h"

namespace {

using bsq::RunConfig;
using bsq::parse_config;
using bsq::parse_config_text;
using bsq::render_config;

template <class F>
std::string thrown_message(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

bool mentions(const std::string& msg, const std::string& needle) {
  return msg.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal config applies documented defaults") {
  RunConfig cfg = parse_config_text("grid.n = 32\ninit.kind = single_mode\n", "mini");

  CHECK(cfg.grid_n == 32);
  CHECK(cfg.init.kind == "single_mode");

  CHECK(cfg.gevrey.a == 1.0);
  CHECK(cfg.gevrey.sigma == 2.0);
  CHECK(cfg.gevrey.s == 0.5);
  CHECK(cfg.dissipation.alpha == 1.0);
  CHECK(cfg.dissipation.beta == 1.0);
  CHECK(cfg.dt == 0.0);
  CHECK(cfg.t_end == 0.0);
  CHECK(cfg.time_nodes == 64);
  CHECK(cfg.init.seed == 1);
  CHECK(cfg.init.amplitude == 1.0);
  CHECK(cfg.init.decay == 2.0);
  CHECK(cfg.init.mode == std::array<int, 3>{0, 0, 2});
  CHECK(cfg.init.path.empty());
  CHECK(cfg.ladder_nmax == 4);
  CHECK(cfg.constants_seed == 1);
  CHECK(cfg.constants_samples == 200);
  CHECK(cfg.constants_safety == 1.5);
  CHECK(cfg.picard_tol == 1e-10);
  CHECK(cfg.max_iter == 64);
  CHECK(cfg.monitor_tstar == 0.0);
  CHECK(cfg.monitor_envelope_c == 0.0);
  CHECK(cfg.monitor_mu == 1.6);

  // empty text is the all-defaults config
  RunConfig bare = parse_config_text("", "empty");
  CHECK(bare.grid_n == 16);
  CHECK(bare.init.kind == "random_divfree");
}

TEST_CASE("every key parses and the echo reproduces the config") {
  std::string text =
      "# full override\n"
      "grid.n = 8\n"
      "gevrey.a = 0.75   # inline comment\n"
      "gevrey.sigma = 3.5\n"
      "gevrey.s = 1.25\n"
      "dissipation.alpha = 1.1\n"
      "dissipation.beta = 1.3\n"
      "time.dt = 0.015625\n"
      "time.t_end = 2.5\n"
      "time.nodes = 33\n"
      "init.kind = checkpoint\n"
      "init.seed = 99\n"
      "init.amplitude = 0.125\n"
      "init.decay = 1.5\n"
      "init.mode = 1 -2 3\n"
      "init.path = runs/base/checkpoints/final.bsqg\n"
      "ladder.n_max = 6\n"
      "constants.seed = 7\n"
      "constants.samples = 150\n"
      "constants.safety = 2\n"
      "tolerances.picard_tol = 1e-09\n"
      "tolerances.max_iter = 20\n"
      "monitor.tstar = 1.75\n"
      "monitor.envelope_c = 0.5\n"
      "monitor.mu = 1.8\n";
  RunConfig cfg = parse_config_text(text, "full");

  CHECK(cfg.grid_n == 8);
  CHECK(cfg.gevrey.a == 0.75);
  CHECK(cfg.gevrey.sigma == 3.5);
  CHECK(cfg.gevrey.s == 1.25);
  CHECK(cfg.dissipation.alpha == 1.1);
  CHECK(cfg.dissipation.beta == 1.3);
  CHECK(cfg.dt == 0.015625);
  CHECK(cfg.t_end == 2.5);
  CHECK(cfg.time_nodes == 33);
  CHECK(cfg.init.kind == "checkpoint");
  CHECK(cfg.init.seed == 99);
  CHECK(cfg.init.amplitude == 0.125);
  CHECK(cfg.init.decay == 1.5);
  CHECK(cfg.init.mode == std::array<int, 3>{1, -2, 3});
  CHECK(cfg.init.path == "runs/base/checkpoints/final.bsqg");
  CHECK(cfg.ladder_nmax == 6);
  CHECK(cfg.constants_seed == 7);
  CHECK(cfg.constants_samples == 150);
  CHECK(cfg.constants_safety == 2.0);
  CHECK(cfg.picard_tol == 1e-9);
  CHECK(cfg.max_iter == 20);
  CHECK(cfg.monitor_tstar == 1.75);
  CHECK(cfg.monitor_envelope_c == 0.5);
  CHECK(cfg.monitor_mu == 1.8);

  // the echo parses back to the same config, byte for byte on re-render
  std::string echo = render_config(cfg);
  RunConfig again = parse_config_text(echo, "echo");
  CHECK(render_config(again) == echo);

  // path line only appears when a path is set
  CHECK(mentions(echo, "init.path = runs/base/checkpoints/final.bsqg"));
  CHECK(!mentions(render_config(RunConfig{}), "init.path"));
}

TEST_CASE("range violations aggregate into one error naming every key") {
  std::string msg = thrown_message([] { parse_config_text("gevrey.sigma = 1.0\n", "cfg"); });
  CHECK(mentions(msg, "gevrey.sigma"));
  CHECK(mentions(msg, "> 1"));

  msg = thrown_message([] {
    parse_config_text(
        "grid.n = 7\n"
        "gevrey.sigma = 1.0\n"
        "dissipation.alpha = 0.5\n"
        "tolerances.picard_tol = 0\n",
        "cfg");
  });
  CHECK(mentions(msg, "grid.n"));
  CHECK(mentions(msg, "gevrey.sigma"));
  CHECK(mentions(msg, "dissipation.alpha"));
  CHECK(mentions(msg, "tolerances.picard_tol"));

  CHECK_THROWS_AS(parse_config_text("gevrey.s = 1.5\n", "cfg"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("time.nodes = 1\n", "cfg"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("constants.samples = 99\n", "cfg"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("constants.safety = 0.9\n", "cfg"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("monitor.mu = 1.5\n", "cfg"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("init.kind = fancy\n", "cfg"), std::invalid_argument);

  // kind-dependent requirements
  msg = thrown_message([] { parse_config_text("init.kind = checkpoint\n", "cfg"); });
  CHECK(mentions(msg, "init.path"));
  msg = thrown_message([] {
    parse_config_text("init.kind = single_mode\ninit.mode = 0 0 0\n", "cfg");
  });
  CHECK(mentions(msg, "init.mode"));
}

TEST_CASE("parse errors carry the origin and line number") {
  std::string msg = thrown_message([] { parse_config_text("grid.n = 16\ngrid.n = 8\n", "dup"); });
  CHECK(mentions(msg, "dup:2"));
  CHECK(mentions(msg, "duplicate key grid.n"));

  msg = thrown_message([] { parse_config_text("\n# c\nspooky.knob = 3\n", "cfg"); });
  CHECK(mentions(msg, "cfg:3"));
  CHECK(mentions(msg, "unknown key spooky.knob"));

  msg = thrown_message([] { parse_config_text("grid.n 16\n", "cfg"); });
  CHECK(mentions(msg, "cfg:1"));
  CHECK(mentions(msg, "section.key = value"));

  msg = thrown_message([] { parse_config_text("grid.n =\n", "cfg"); });
  CHECK(mentions(msg, "missing value"));

  msg = thrown_message([] { parse_config_text("= 4\n", "cfg"); });
  CHECK(mentions(msg, "missing key"));

  msg = thrown_message([] { parse_config_text("grid.n = twelve\n", "cfg"); });
  CHECK(mentions(msg, "expects an integer"));

  msg = thrown_message([] { parse_config_text("gevrey.a = 1.0x\n", "cfg"); });
  CHECK(mentions(msg, "expects a number"));

  msg = thrown_message([] { parse_config_text("init.seed = -3\n", "cfg"); });
  CHECK(mentions(msg, "unsigned"));

  msg = thrown_message([] { parse_config_text("init.mode = 1 2\n", "cfg"); });
  CHECK(mentions(msg, "three integers"));
  msg = thrown_message([] { parse_config_text("init.mode = 1 2 3 4\n", "cfg"); });
  CHECK(mentions(msg, "three integers"));
}

TEST_CASE("parse_config reads files and reports missing ones") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bsq_config_test";
  fs::create_directories(dir);
  fs::path file = dir / "run.cfg";
  {
    std::ofstream out(file);
    out << "grid.n = 8\n\n# trailing comment\ninit.seed = 42\n";
  }
  RunConfig cfg = parse_config(file.string());
  CHECK(cfg.grid_n == 8);
  CHECK(cfg.init.seed == 42);

  std::string msg =
      thrown_message([&] { parse_config((dir / "absent.cfg").string()); });
  CHECK(mentions(msg, "cannot open"));
  CHECK(mentions(msg, "absent.cfg"));
  fs::remove_all(dir);
}
