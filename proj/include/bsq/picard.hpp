#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsq/inequalities.hpp"
#include "bsq/norms.hpp"
#include "bsq/semigroup.hpp"

namespace bsq {

// Banach fixed-point construction for the mild system a = x0 + B(a,a) + L(a)
// on a uniform time lattice, with a machine-checkable certificate.

// Admissible horizon T = 0.99 * min over both dissipation orders of
// (sqrt(8 C |x0|) + 1)^{-4 gamma / (2 gamma - 1)}. The 0.99 shave realizes
// the strict inequality of the closed-form recipe and keeps T < 1, which the
// linear-part constant C1 = T requires.
double existence_time(const GevreyParams& p, const DissipationParams& d, double initial_norm,
                      double C);

struct PicardResult {
  Trajectory trajectory;
  std::vector<double> residuals;  // sup-node pair-norm gap between successive iterates
  bool converged = false;
  int iterations = 0;  // map applications performed
};

// Iterates a^0 = free evolution of x0, a^{m+1} = a^0 + B(a^m, a^m) + L(a^m)
// until the residual drops below tol or max_iter is hit. time_nodes counts
// lattice points including t = 0, so dt = T / (time_nodes - 1).
PicardResult picard_iterate(const CoupledState& x0, const GevreyParams& p,
                            const DissipationParams& d, double T, int time_nodes, double tol,
                            int max_iter);

struct ExistenceCertificate {
  GevreyParams gevrey;
  DissipationParams dissipation;
  int grid_n = 0;
  double initial_norm = 0.0;
  ConstantEstimate bilinear_constant;  // empirical C-hat with its provenance
  double linear_constant = 0.0;        // C1 = T
  double quadratic_constant = 0.0;     // C2 = C-hat (T^{1-1/(2a)} + T^{1-1/(2b)})
  double admissible_T = 0.0;           // closed-form horizon for this data
  double T = 0.0;                      // horizon actually iterated
  int time_nodes = 0;
  double tol = 0.0;
  bool small_data_check = false;  // T < 1 and 4 C2 |x0| < (1 - C1)^2
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  double contraction_ratio = 0.0;  // max successive residual ratio observed
  double solution_norm = 0.0;      // sup-node pair norm of the fixed point
  double lemma_bound = 0.0;        // 2 |x0| / (1 - C1)
  double theorem_bound = 0.0;      // (1 - T) / (2 C-hat [T^{1-1/(2a)} + T^{1-1/(2b)}])
  bool solution_norm_bound_ok = false;
  double uniqueness_gap = -1.0;  // sup distance between the two starting-guess limits
  bool valid = false;
  std::string trajectory_ref;  // filled in when the trajectory is persisted
};

struct CertifyOptions {
  long constant_samples = 200;
  std::uint64_t constant_seed = 1;
  double constant_safety = 1.5;
  double horizon = 0.0;  // > 0 overrides the closed-form admissible time
  int time_nodes = 64;
  double tol = 1e-10;
  int max_iter = 64;
  bool uniqueness_probe = true;
};

struct CertifyOutcome {
  ExistenceCertificate certificate;
  Trajectory trajectory;
  std::vector<double> residuals;
};

// Estimates the bilinear constant, picks the horizon, checks the small-data
// gate, and iterates only when the gate holds. Both solution bounds are
// checked with 1e-6 relative slack; valid = gate && converged && bounds.
CertifyOutcome certify(const CoupledState& x0, const GevreyParams& p, const DissipationParams& d,
                       const CertifyOptions& opt = {});

}  // namespace bsq
