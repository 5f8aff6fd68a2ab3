#pragma once

#include <string>

#include "bsq/field.hpp"
#include "bsq/integrator.hpp"
#include "bsq/picard.hpp"
#include "bsq/semigroup.hpp"

namespace bsq {

// Binary checkpoint: magic "BSQG", u32 version, u32 n, f64 time, then the
// four component arrays (u1, u2, u3, theta) as little-endian f64 re,im pairs
// in grid index order. Roundtrips are bit-exact; see docs/FORMATS.md.
void write_checkpoint(const std::string& path, const CoupledState& x);
CoupledState read_checkpoint(const std::string& path);

// Trajectory container "BSQT": u32 version, u32 n, u32 node_count, f64 dt,
// then per node f64 time followed by the four arrays.
void write_trajectory(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory(const std::string& path);

// Norm-series CSV with %.17g floats and \n line endings; identical series
// produce byte-identical files.
std::string series_csv(const NormSeries& s);
void write_series(const std::string& path, const NormSeries& s);
NormSeries read_series(const std::string& path);

// Certificate report as fixed-order `key = value` lines.
std::string certificate_text(const ExistenceCertificate& cert);

// Residual-per-iteration CSV for a contraction run.
std::string residuals_csv(const std::vector<double>& residuals);

// Spectral state as rows k1,k2,k3,component,re,im, component-major
// (u1, u2, u3, theta) in grid index order, calibrated coefficients.
std::string state_csv(const CoupledState& x);

// Creates dir plus checkpoints/ and reports/ beneath it.
void ensure_run_dir(const std::string& dir);

void write_text(const std::string& path, const std::string& text);

}  // namespace bsq
