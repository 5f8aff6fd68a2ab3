#include "bsq/config.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail_at(const std::string& origin, long line, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << what;
  throw std::invalid_argument(os.str());
}

double parse_double(const std::string& origin, long line, const std::string& key,
                    const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail_at(origin, line, "key " + key + " expects a number, got \"" + value + "\"");
  return v;
}

long long parse_int(const std::string& origin, long line, const std::string& key,
                    const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    fail_at(origin, line, "key " + key + " expects an integer, got \"" + value + "\"");
  return v;
}

std::uint64_t parse_seed(const std::string& origin, long line, const std::string& key,
                         const std::string& value) {
  if (!value.empty() && value[0] == '-')
    fail_at(origin, line, "key " + key + " expects an unsigned integer, got \"" + value + "\"");
  const char* begin = value.c_str();
  char* end = nullptr;
  unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0')
    fail_at(origin, line, "key " + key + " expects an unsigned integer, got \"" + value + "\"");
  return static_cast<std::uint64_t>(v);
}

std::array<int, 3> parse_mode(const std::string& origin, long line, const std::string& value) {
  std::istringstream is(value);
  std::array<int, 3> k{};
  if (!(is >> k[0] >> k[1] >> k[2]))
    fail_at(origin, line, "key init.mode expects three integers, got \"" + value + "\"");
  std::string rest;
  if (is >> rest)
    fail_at(origin, line, "key init.mode expects three integers, got \"" + value + "\"");
  return k;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Range checks mirror the preconditions of the modules the values feed;
// violations are reported together so one edit pass fixes them all.
void check_ranges(const RunConfig& cfg) {
  std::vector<std::string> bad;
  auto flag = [&bad](const std::string& key, const std::string& why) {
    bad.push_back(key + " (" + why + ")");
  };

  if (cfg.grid_n < 8 || cfg.grid_n > 256 || cfg.grid_n % 2 != 0)
    flag("grid.n", "must be even and within [8, 256]");
  if (!(cfg.gevrey.a >= 0.0)) flag("gevrey.a", "must be >= 0");
  if (!(cfg.gevrey.sigma > 1.0)) flag("gevrey.sigma", "must be > 1");
  if (!(cfg.gevrey.s >= 0.0 && cfg.gevrey.s < 1.5)) flag("gevrey.s", "must lie in [0, 1.5)");
  if (!(cfg.dissipation.alpha > 0.5)) flag("dissipation.alpha", "must be > 1/2");
  if (!(cfg.dissipation.beta > 0.5)) flag("dissipation.beta", "must be > 1/2");
  if (!(cfg.dt >= 0.0)) flag("time.dt", "must be >= 0");
  if (!(cfg.t_end >= 0.0)) flag("time.t_end", "must be >= 0");
  if (cfg.time_nodes < 2) flag("time.nodes", "must be >= 2");
  if (cfg.init.kind != "random_divfree" && cfg.init.kind != "single_mode" &&
      cfg.init.kind != "checkpoint")
    flag("init.kind", "must be random_divfree, single_mode, or checkpoint");
  if (!(cfg.init.amplitude >= 0.0)) flag("init.amplitude", "must be >= 0");
  if (!(cfg.init.decay >= 0.0)) flag("init.decay", "must be >= 0");
  if (cfg.init.kind == "single_mode" && cfg.init.mode[0] == 0 && cfg.init.mode[1] == 0 &&
      cfg.init.mode[2] == 0)
    flag("init.mode", "single_mode needs a nonzero wavevector");
  if (cfg.init.kind == "checkpoint" && cfg.init.path.empty())
    flag("init.path", "checkpoint init needs a source file");
  if (cfg.ladder_nmax < 1) flag("ladder.n_max", "must be >= 1");
  if (cfg.constants_samples < 100) flag("constants.samples", "must be >= 100");
  if (!(cfg.constants_safety >= 1.0)) flag("constants.safety", "must be >= 1");
  if (!(cfg.picard_tol > 0.0)) flag("tolerances.picard_tol", "must be > 0");
  if (cfg.max_iter < 1) flag("tolerances.max_iter", "must be >= 1");
  if (!(cfg.monitor_tstar >= 0.0)) flag("monitor.tstar", "must be >= 0");
  if (!(cfg.monitor_envelope_c >= 0.0)) flag("monitor.envelope_c", "must be >= 0");
  if (!(cfg.monitor_mu > 1.5)) flag("monitor.mu", "must be > 3/2");

  if (bad.empty()) return;
  std::string msg = "config range errors: " + bad[0];
  for (std::size_t i = 1; i < bad.size(); ++i) msg += "; " + bad[i];
  throw std::invalid_argument(msg);
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string raw;
  long line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      fail_at(origin, line, "expected `section.key = value`, got \"" + stripped + "\"");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail_at(origin, line, "missing key before `=`");
    if (value.empty()) fail_at(origin, line, "missing value for key " + key);
    if (!seen.insert(key).second) fail_at(origin, line, "duplicate key " + key);

    if (key == "grid.n")
      cfg.grid_n = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "gevrey.a")
      cfg.gevrey.a = parse_double(origin, line, key, value);
    else if (key == "gevrey.sigma")
      cfg.gevrey.sigma = parse_double(origin, line, key, value);
    else if (key == "gevrey.s")
      cfg.gevrey.s = parse_double(origin, line, key, value);
    else if (key == "dissipation.alpha")
      cfg.dissipation.alpha = parse_double(origin, line, key, value);
    else if (key == "dissipation.beta")
      cfg.dissipation.beta = parse_double(origin, line, key, value);
    else if (key == "time.dt")
      cfg.dt = parse_double(origin, line, key, value);
    else if (key == "time.t_end")
      cfg.t_end = parse_double(origin, line, key, value);
    else if (key == "time.nodes")
      cfg.time_nodes = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "init.kind")
      cfg.init.kind = value;
    else if (key == "init.seed")
      cfg.init.seed = parse_seed(origin, line, key, value);
    else if (key == "init.amplitude")
      cfg.init.amplitude = parse_double(origin, line, key, value);
    else if (key == "init.decay")
      cfg.init.decay = parse_double(origin, line, key, value);
    else if (key == "init.mode")
      cfg.init.mode = parse_mode(origin, line, value);
    else if (key == "init.path")
      cfg.init.path = value;
    else if (key == "ladder.n_max")
      cfg.ladder_nmax = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "constants.seed")
      cfg.constants_seed = parse_seed(origin, line, key, value);
    else if (key == "constants.samples")
      cfg.constants_samples = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "constants.safety")
      cfg.constants_safety = parse_double(origin, line, key, value);
    else if (key == "tolerances.picard_tol")
      cfg.picard_tol = parse_double(origin, line, key, value);
    else if (key == "tolerances.max_iter")
      cfg.max_iter = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "monitor.tstar")
      cfg.monitor_tstar = parse_double(origin, line, key, value);
    else if (key == "monitor.envelope_c")
      cfg.monitor_envelope_c = parse_double(origin, line, key, value);
    else if (key == "monitor.mu")
      cfg.monitor_mu = parse_double(origin, line, key, value);
    else
      fail_at(origin, line, "unknown key " + key);
  }

  check_ranges(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "grid.n = " << cfg.grid_n << "\n";
  os << "gevrey.a = " << fmt(cfg.gevrey.a) << "\n";
  os << "gevrey.sigma = " << fmt(cfg.gevrey.sigma) << "\n";
  os << "gevrey.s = " << fmt(cfg.gevrey.s) << "\n";
  os << "dissipation.alpha = " << fmt(cfg.dissipation.alpha) << "\n";
  os << "dissipation.beta = " << fmt(cfg.dissipation.beta) << "\n";
  os << "time.dt = " << fmt(cfg.dt) << "\n";
  os << "time.t_end = " << fmt(cfg.t_end) << "\n";
  os << "time.nodes = " << cfg.time_nodes << "\n";
  os << "init.kind = " << cfg.init.kind << "\n";
  os << "init.seed = " << cfg.init.seed << "\n";
  os << "init.amplitude = " << fmt(cfg.init.amplitude) << "\n";
  os << "init.decay = " << fmt(cfg.init.decay) << "\n";
  os << "init.mode = " << cfg.init.mode[0] << " " << cfg.init.mode[1] << " " << cfg.init.mode[2]
     << "\n";
  if (!cfg.init.path.empty()) os << "init.path = " << cfg.init.path << "\n";
  os << "ladder.n_max = " << cfg.ladder_nmax << "\n";
  os << "constants.seed = " << cfg.constants_seed << "\n";
  os << "constants.samples = " << cfg.constants_samples << "\n";
  os << "constants.safety = " << fmt(cfg.constants_safety) << "\n";
  os << "tolerances.picard_tol = " << fmt(cfg.picard_tol) << "\n";
  os << "tolerances.max_iter = " << cfg.max_iter << "\n";
  os << "monitor.tstar = " << fmt(cfg.monitor_tstar) << "\n";
  os << "monitor.envelope_c = " << fmt(cfg.monitor_envelope_c) << "\n";
  os << "monitor.mu = " << fmt(cfg.monitor_mu) << "\n";
  return os.str();
}

}  // namespace bsq
