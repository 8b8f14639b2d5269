#pragma once

namespace tripsim {

// Single OPO: signal mode damped at gamma_a, pump mode at gamma_b, effective
// nonlinearity kappa, classical pump amplitude epsilon.
struct OpoParams {
  double gamma_a = 1.0;
  double gamma_b = 1.0;
  double kappa = 1e-2;
  double epsilon = 0.0;
};

enum class PumpBranch { below, above };

// Oscillation threshold pump amplitude epsilon_c = gamma_a * gamma_b / kappa.
double critical_pump(const OpoParams& p);

// Linearised results lose validity close to threshold; this flags the soft
// warning band |epsilon/epsilon_c - 1| < 0.02 attached to outputs.
bool opo_near_threshold(const OpoParams& p);

struct SpectrumPoint {
  double omega = 0.0;
  double s_x = 1.0;
  double s_y = 1.0;
  bool near_threshold = false;
};

// Output spectral variances of the signal quadratures at frequency offset
// omega. The branch must be consistent with epsilon vs the critical pump;
// requesting the wrong branch is an error, never silently corrected.
SpectrumPoint opo_spectrum(const OpoParams& p, double omega, PumpBranch branch);

}  // namespace tripsim
