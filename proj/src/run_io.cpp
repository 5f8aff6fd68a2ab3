#include "bsq/run_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bsq {

namespace {

constexpr char kCheckpointMagic[4] = {'B', 'S', 'Q', 'G'};
constexpr char kTrajectoryMagic[4] = {'B', 'S', 'Q', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

// All binary payloads are explicit little-endian, independent of host order.
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
}

struct Cursor {
  const unsigned char* p;
  std::size_t left;
  const std::string& path;

  void need(std::size_t n) const {
    if (left < n) throw std::runtime_error("truncated file " + path);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    p += 4;
    left -= 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    p += 8;
    left -= 8;
    return std::bit_cast<double>(bits);
  }
};

void put_field(std::string& out, const SpectralField& f) {
  for (int c = 0; c < f.components(); ++c)
    for (const cplx& z : f.component(c)) {
      put_f64(out, z.real());
      put_f64(out, z.imag());
    }
}

void get_field(Cursor& cur, SpectralField& f) {
  for (int c = 0; c < f.components(); ++c)
    for (cplx& z : f.component(c)) {
      double re = cur.f64();
      double im = cur.f64();
      z = cplx{re, im};
    }
}

void put_state(std::string& out, const CoupledState& x) {
  put_field(out, x.velocity);
  put_field(out, x.temperature);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

Cursor open_container(const std::string& bytes, const std::string& path, const char magic[4],
                      const char* what) {
  Cursor cur{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), path};
  cur.need(4);
  if (std::memcmp(cur.p, magic, 4) != 0)
    throw std::runtime_error("not a " + std::string(what) + " file (bad magic): " + path);
  cur.p += 4;
  cur.left -= 4;
  std::uint32_t version = cur.u32();
  if (version != kFormatVersion)
    throw std::runtime_error("unsupported " + std::string(what) + " version " +
                             std::to_string(version) + " in " + path);
  return cur;
}

GridPtr grid_from_header(Cursor& cur) {
  std::uint32_t n = cur.u32();
  if (n < 8 || n > 256 || n % 2 != 0)
    throw std::runtime_error("invalid grid size " + std::to_string(n) + " in " + cur.path);
  return make_grid(static_cast<int>(n));
}

void expect_consumed(const Cursor& cur) {
  if (cur.left != 0) throw std::runtime_error("trailing bytes in " + cur.path);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

std::string expected_series_header(int nmax) {
  std::string h = "time,l2_pair";
  for (int j = 1; j <= nmax; ++j) h += ",gevrey_" + std::to_string(j);
  for (int j = 1; j <= nmax; ++j) h += ",l1_" + std::to_string(j);
  h += ",u_diss,th_diss,u_l2_diss,th_l2_diss";
  return h;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t begin = 0;
  while (true) {
    std::size_t comma = line.find(',', begin);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(begin));
      return cells;
    }
    cells.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

double cell_to_double(const std::string& cell, const std::string& path, long line) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::runtime_error(path + ":" + std::to_string(line) + ": malformed number \"" + cell +
                             "\"");
  return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const CoupledState& x) {
  if (!x.grid()) throw std::invalid_argument("write_checkpoint: empty state");
  std::string out;
  out.reserve(20 + 16 * 4 * x.velocity.modes());
  out.append(kCheckpointMagic, 4);
  put_u32(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(x.grid()->n()));
  put_f64(out, x.time);
  put_state(out, x);
  write_file(path, out);
}

CoupledState read_checkpoint(const std::string& path) {
  std::string bytes = read_file(path);
  Cursor cur = open_container(bytes, path, kCheckpointMagic, "checkpoint");
  GridPtr grid = grid_from_header(cur);
  double time = cur.f64();
  CoupledState x(grid, time);
  get_field(cur, x.velocity);
  get_field(cur, x.temperature);
  expect_consumed(cur);
  return x;
}

void write_trajectory(const std::string& path, const Trajectory& traj) {
  if (traj.nodes.empty()) throw std::invalid_argument("write_trajectory: no nodes");
  std::string out;
  out.reserve(24 + traj.nodes.size() * (8 + 16 * 4 * traj.nodes.front().velocity.modes()));
  out.append(kTrajectoryMagic, 4);
  put_u32(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(traj.grid()->n()));
  put_u32(out, static_cast<std::uint32_t>(traj.nodes.size()));
  put_f64(out, traj.dt);
  for (const CoupledState& node : traj.nodes) {
    put_f64(out, node.time);
    put_state(out, node);
  }
  write_file(path, out);
}

Trajectory read_trajectory(const std::string& path) {
  std::string bytes = read_file(path);
  Cursor cur = open_container(bytes, path, kTrajectoryMagic, "trajectory");
  GridPtr grid = grid_from_header(cur);
  std::uint32_t count = cur.u32();
  if (count == 0) throw std::runtime_error("trajectory with zero nodes in " + path);
  Trajectory traj;
  traj.dt = cur.f64();
  traj.nodes.reserve(count);
  for (std::uint32_t j = 0; j < count; ++j) {
    CoupledState node(grid);
    node.time = cur.f64();
    get_field(cur, node.velocity);
    get_field(cur, node.temperature);
    traj.nodes.push_back(std::move(node));
  }
  expect_consumed(cur);
  return traj;
}

std::string series_csv(const NormSeries& s) {
  if (s.ladder_nmax < 1) throw std::invalid_argument("series_csv: ladder_nmax must be >= 1");
  std::string out = expected_series_header(s.ladder_nmax) + "\n";
  for (const NormRecord& r : s.records) {
    if (static_cast<int>(r.gevrey_pair.size()) != s.ladder_nmax ||
        static_cast<int>(r.weighted_l1.size()) != s.ladder_nmax)
      throw std::invalid_argument("series_csv: record ladder width mismatch");
    out += fmt(r.time);
    out += ",";
    out += fmt(r.l2_pair);
    for (double v : r.gevrey_pair) {
      out += ",";
      out += fmt(v);
    }
    for (double v : r.weighted_l1) {
      out += ",";
      out += fmt(v);
    }
    out += ",";
    out += fmt(r.u_dissipation);
    out += ",";
    out += fmt(r.th_dissipation);
    out += ",";
    out += fmt(r.u_l2_dissipation);
    out += ",";
    out += fmt(r.th_l2_dissipation);
    out += "\n";
  }
  return out;
}

void write_series(const std::string& path, const NormSeries& s) { write_file(path, series_csv(s)); }

NormSeries read_series(const std::string& path) {
  std::string bytes = read_file(path);
  std::istringstream is(bytes);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty series file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  // Recover the ladder width from the header, then insist on an exact match.
  int nmax = 0;
  for (std::size_t at = line.find(",gevrey_"); at != std::string::npos;
       at = line.find(",gevrey_", at + 1))
    ++nmax;
  if (nmax < 1 || line != expected_series_header(nmax))
    throw std::runtime_error(path + ":1: unrecognized series header");

  NormSeries s;
  s.ladder_nmax = nmax;
  const std::size_t want = 2 + 2 * static_cast<std::size_t>(nmax) + 4;
  long lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != want)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(want) + " columns, got " +
                               std::to_string(cells.size()));
    NormRecord r;
    std::size_t c = 0;
    r.time = cell_to_double(cells[c++], path, lineno);
    r.l2_pair = cell_to_double(cells[c++], path, lineno);
    r.gevrey_pair.resize(nmax);
    for (int j = 0; j < nmax; ++j) r.gevrey_pair[j] = cell_to_double(cells[c++], path, lineno);
    r.weighted_l1.resize(nmax);
    for (int j = 0; j < nmax; ++j) r.weighted_l1[j] = cell_to_double(cells[c++], path, lineno);
    r.u_dissipation = cell_to_double(cells[c++], path, lineno);
    r.th_dissipation = cell_to_double(cells[c++], path, lineno);
    r.u_l2_dissipation = cell_to_double(cells[c++], path, lineno);
    r.th_l2_dissipation = cell_to_double(cells[c++], path, lineno);
    s.records.push_back(std::move(r));
  }
  return s;
}

std::string certificate_text(const ExistenceCertificate& cert) {
  std::ostringstream os;
  os << "gevrey.a = " << fmt(cert.gevrey.a) << "\n";
  os << "gevrey.sigma = " << fmt(cert.gevrey.sigma) << "\n";
  os << "gevrey.s = " << fmt(cert.gevrey.s) << "\n";
  os << "dissipation.alpha = " << fmt(cert.dissipation.alpha) << "\n";
  os << "dissipation.beta = " << fmt(cert.dissipation.beta) << "\n";
  os << "grid.n = " << cert.grid_n << "\n";
  os << "initial_norm = " << fmt(cert.initial_norm) << "\n";
  os << "bilinear_constant.estimator = " << cert.bilinear_constant.which << "\n";
  os << "bilinear_constant.value = " << fmt(cert.bilinear_constant.value) << "\n";
  os << "bilinear_constant.max_ratio = " << fmt(cert.bilinear_constant.max_ratio) << "\n";
  os << "bilinear_constant.samples = " << cert.bilinear_constant.samples << "\n";
  os << "bilinear_constant.seed = " << cert.bilinear_constant.seed << "\n";
  os << "bilinear_constant.safety = " << fmt(cert.bilinear_constant.safety) << "\n";
  os << "linear_constant = " << fmt(cert.linear_constant) << "\n";
  os << "quadratic_constant = " << fmt(cert.quadratic_constant) << "\n";
  os << "admissible_T = " << fmt(cert.admissible_T) << "\n";
  os << "T = " << fmt(cert.T) << "\n";
  os << "time_nodes = " << cert.time_nodes << "\n";
  os << "tol = " << fmt(cert.tol) << "\n";
  os << "small_data_check = " << yesno(cert.small_data_check) << "\n";
  os << "converged = " << yesno(cert.converged) << "\n";
  os << "iterations = " << cert.iterations << "\n";
  os << "final_residual = " << fmt(cert.final_residual) << "\n";
  os << "contraction_ratio = " << fmt(cert.contraction_ratio) << "\n";
  os << "solution_norm = " << fmt(cert.solution_norm) << "\n";
  os << "lemma_bound = " << fmt(cert.lemma_bound) << "\n";
  os << "theorem_bound = " << fmt(cert.theorem_bound) << "\n";
  os << "solution_norm_bound_ok = " << yesno(cert.solution_norm_bound_ok) << "\n";
  os << "uniqueness_gap = " << fmt(cert.uniqueness_gap) << "\n";
  os << "valid = " << yesno(cert.valid) << "\n";
  if (!cert.trajectory_ref.empty()) os << "trajectory_ref = " << cert.trajectory_ref << "\n";
  return os.str();
}

std::string residuals_csv(const std::vector<double>& residuals) {
  std::string out = "iteration,residual\n";
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    out += std::to_string(i + 1);
    out += ",";
    out += fmt(residuals[i]);
    out += "\n";
  }
  return out;
}

std::string state_csv(const CoupledState& x) {
  if (!x.grid()) throw std::invalid_argument("state_csv: empty state");
  const FourierGrid& g = *x.grid();
  const double scale = g.spectral_scale();
  std::string out = "k1,k2,k3,component,re,im\n";
  const char* names[4] = {"u1", "u2", "u3", "theta"};
  for (int c = 0; c < 4; ++c) {
    std::span<const cplx> comp =
        c < 3 ? x.velocity.component(c) : x.temperature.component(0);
    for (std::size_t idx = 0; idx < comp.size(); ++idx) {
      const std::array<int, 3>& k = g.wavenumber(idx);
      out += std::to_string(k[0]);
      out += ",";
      out += std::to_string(k[1]);
      out += ",";
      out += std::to_string(k[2]);
      out += ",";
      out += names[c];
      out += ",";
      out += fmt(scale * comp[idx].real());
      out += ",";
      out += fmt(scale * comp[idx].imag());
      out += "\n";
    }
  }
  return out;
}

void ensure_run_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "checkpoints");
  fs::create_directories(fs::path(dir) / "reports");
}

void write_text(const std::string& path, const std::string& text) { write_file(path, text); }

}  // namespace bsq
