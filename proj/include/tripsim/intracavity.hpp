#pragma once

#include "tripsim/moment_table.hpp"

namespace tripsim {

// Triply concurrent interaction inside a driven cavity: the three pump modes
// are damped at gamma and driven with equal real amplitude epsilon, the three
// signal modes are damped at kappa.
struct CavityParams {
  double gamma = 10.0;
  double kappa = 1.0;
  double chi = 1e-2;
  double epsilon = 0.0;
};

enum class CavityBranch { below, above };

// Oscillation threshold epsilon_th = gamma * kappa / (2 chi).
double cavity_threshold(const CavityParams& p);

// Validity warning band |epsilon/epsilon_th - 1| < 0.02; the linearised
// analysis is not trusted inside it (soft flag, not an error).
bool cavity_near_threshold(const CavityParams& p);

struct SteadyState {
  double beta_ss = 0.0;
  double alpha_ss = 0.0;
  CavityBranch branch = CavityBranch::below;
};

// Below threshold the signals are empty and beta = epsilon/gamma; above,
// beta clamps to kappa/(2 chi) and alpha = +sqrt((epsilon - epsilon_th)/chi).
// The positive root is a convention; all criteria are invariant under the
// global sign flip.
SteadyState steady_state(const CavityParams& p);

// Zero-frequency value of the sum-variance combinations S_ij(0), evaluated
// from the closed-form rational functions of the matching branch. Both
// branches meet at 2/9 at threshold.
double zero_freq_closed_form(const CavityParams& p);
// Same, with the branch forced (e.g. to probe both forms at threshold).
double zero_freq_closed_form(const CavityParams& p, CavityBranch branch);

// Output spectral moment table of the three signal modes at frequency omega,
// from the linearised fluctuation analysis about the steady state: drift
// Jacobian of the damped-driven equations, diffusion from the interaction
// noise at steady state, stationary spectrum, output coupling 2 kappa.
// alpha_sign flips the above-threshold steady-state root (+1 or -1).
// Throws if the drift matrix is singular (exactly at threshold, omega = 0).
MomentTable cavity_spectrum_table(const CavityParams& p, double omega,
                                  int alpha_sign = +1);

struct EprSpectraPoint {
  double one_mode;
  double two_mode;
};

// EPR products per frequency from the spectral table (plus sign,
// representative permutation; the modes are symmetric).
EprSpectraPoint cavity_epr_spectra(const CavityParams& p, double omega);

}  // namespace tripsim
