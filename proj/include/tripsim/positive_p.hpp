#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "tripsim/moment_table.hpp"
#include "tripsim/rng.hpp"

namespace tripsim {

// Phase-space state of the six-mode system: three signal amplitudes alpha,
// three pump amplitudes beta, plus their independent "+" partners. The
// partners are NOT complex conjugates along a trajectory; conjugacy holds
// only for ensemble means.
struct PPState {
  std::array<std::complex<double>, 3> alpha{}, alpha_plus{}, beta{}, beta_plus{};
};

// Deterministic part of the Ito equations. Pump j feeds the signal pair
// (0,1), (1,2), (0,2) for j = 0, 1, 2.
PPState pp_drift(const PPState& s, double chi);

// One Euler-Maruyama noise application: six independent complex Wiener
// increments, each shared between the two signals of its pump term (one side
// takes the increment, the other its conjugate), with amplitude
// sqrt(chi * beta_j) on the principal branch.
void pp_add_noise(PPState& s, double chi, double dt, Philox4x32& rng);

struct SimConfig {
  double chi = 1e-2;
  double beta0 = 1e3;          // initial real pump amplitude, alpha(0) = 0
  long long n_traj = 100000;
  double dt = 1e-4;            // step in scaled time zeta = chi * beta0 * t
  double zeta_max = 0.4;
  std::uint64_t seed = 1;
  int batch_count = 32;        // batches for standard-error estimation
  int record_stride = 100;     // steps between recorded grid points
  int threads = 1;
  double divergence_factor = 1e6;  // |variable| > factor * beta0 marks a trajectory diverged
};

struct PPPoint {
  double zeta = 0.0;
  double v3 = 0.0, v3_err = 0.0;
  double epr_one = 0.0, epr_one_err = 0.0;
  double epr_two = 0.0, epr_two_err = 0.0;
  // Pairwise differences of the three sum-variance combinations
  // (12-13, 12-23, 13-23) with batch errors; zero in expectation.
  std::array<double, 3> perm_diff{}, perm_diff_err{};
  // epr_one - 4 * epr_two with batch error; zero in expectation.
  double epr_four_defect = 0.0, epr_four_defect_err = 0.0;
};

struct EnsembleResult {
  std::vector<PPPoint> points;
  std::vector<MomentTable> tables;  // pooled three-mode table per grid point
  // |<alpha_j^+> - conj(<alpha_j>)| per mode and grid point, with batch errors.
  std::vector<std::array<double, 3>> conj_defect;
  std::vector<std::array<double, 3>> conj_defect_err;
  long long n_diverged = 0;
  long long n_used = 0;
};

// Fixed-step Euler-Maruyama integration of the full Ito system over an
// ensemble of trajectories. Results are a pure function of the config: each
// trajectory draws from its own counter-based stream, trajectories are
// grouped into contiguous batches, and batches are merged in index order, so
// the output is bit-identical for any worker count. Diverged trajectories
// are excluded from the moments and counted.
//
// Quadrature moments apply the normal-ordering correction when converting
// phase-space averages to operator moments: trajectory averages converge to
// normally ordered expectations, so single-mode variances gain +1 from the
// commutator while distinct-mode covariances take no correction.
EnsembleResult run_ensemble(const SimConfig& cfg);

// Noiseless integrator check on conjugate-pair initial data
// (alpha_j = alpha0 real, beta_j = beta0): the noiseless flow conserves
// E = sum |beta|^2 + (1/2) sum |alpha|^2. Returns max |E(t)-E(0)| / E(0).
double invariant_drift(const SimConfig& cfg, double alpha0);

}  // namespace tripsim
