#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "vkerr/floquet.hpp"

namespace vkerr {

struct FockTruncation {
  int n_max = 4;  // highest photon number kept
};

/// Generator of the full atom + cavity master equation (probe off, drive
/// frame) acting on column-stacked density matrices, vec(A rho B) =
/// (B^T kron A) vec(rho). Basis ordering is atom-major: |a> kron |n>, with
/// atom levels |0>, |1>, |2>.
Eigen::MatrixXcd liouvillian(const SystemParams& params, int n_max);

/// max |vec(I)^dagger L|, which vanishes for a trace-preserving generator.
double trace_preservation_error(const Eigen::MatrixXcd& L);

struct LindbladResult {
  SteadyState0 state;  // dressed-basis atomic state after tracing the cavity out
  int n_max = 0;
  double convergence_delta = 0.0;  // max change against n_max + 1
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double mean_photon_number = 0.0;
};

/// Null vector of the Liouvillian, normalized to unit trace, reduced and
/// rotated into |+> = s|0> + c|2>, |-> = s|2> - c|0>. The mixing amplitudes
/// come from a separate diagonalization of the drive block.
///
/// Throws DegenerateNullSpace when the null space is not one-dimensional,
/// NonConvergedTruncation when n_max + 1 changes the result by 1e-4 or more.
LindbladResult lindblad_steady_state(const SystemParams& params, FockTruncation trunc = {});

struct TimeDomainOptions {
  double horizon = 0.0;  // 0 selects 50 / min(gamma1, gamma2)
  int samples_per_period = 64;
  double drift_tolerance = 1e-9;
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
};

/// One sampled period of the probed reduced dynamics and its harmonics.
struct LimitCycleRecord {
  static constexpr int kMaxHarmonic = 3;

  double omega_p = 0.0;
  double delta_p = 0.0;
  double period = 0.0;
  double t_start = 0.0;  // absolute time of the first sample
  int periods = 0;       // periods integrated before sampling
  double drift = 0.0;    // max-norm change over the sampled period
  double hermiticity_error = 0.0;
  std::vector<double> times;
  // samples[e][j]: element e (kAllElements order) at times[j].
  std::array<std::vector<Complex>, 9> samples;
  // harmonics[e][n + 3] = coefficient of exp(i n delta_p t), n in [-3, 3].
  std::array<std::array<Complex, 2 * kMaxHarmonic + 1>, 9> harmonics{};

  Complex harmonic(Element e, int n) const;
};

/// Integrates the reduced equations with the probe at full amplitude omega_p
/// until the state repeats after one probe period, then Fourier-analyses one
/// period. Starts from rho_-- = rho_++ = 1/2 so the result does not depend on
/// the analytic steady state.
///
/// Throws InvalidArgument for delta_p = 0, NoLimitCycle when the drift
/// tolerance is not met within the horizon.
LimitCycleRecord time_domain_reference(const SystemParams& params, double omega_p,
                                       double delta_p, const TimeDomainOptions& options = {});

}  // namespace vkerr
