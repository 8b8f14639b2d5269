#pragma once

#include <array>
#include <vector>

#include "tripsim/moment_table.hpp"
#include "tripsim/opo.hpp"

namespace tripsim {

// Two-beamsplitter network: BS1 (reflectivity mu) mixes inputs 1 and 2, BS2
// (reflectivity nu) mixes the transmitted port with input 3. The derived 3x3
// map is orthogonal for all mu, nu in [0, 1].
Eigen::Matrix3d aoki_matrix(double mu, double nu);

struct AokiNetwork {
  double mu;
  double nu;
  Eigen::Matrix3d matrix;

  AokiNetwork(double mu_, double nu_);
};

// Canonical input assignment: input 1 squeezed in Y, inputs 2 and 3 squeezed
// in X, all with the same parameter r.
std::array<SqueezerSpec, 3> aoki_input_triple(double r);

// Propagates three independent squeezed inputs through the network.
MomentTable propagate_static(const std::array<SqueezerSpec, 3>& inputs,
                             const AokiNetwork& net);

// Two-mode table of both BS1 output ports (b1 and its complement), used for
// the bipartite check on the intermediate beam.
MomentTable bs1_pair_table(double mu, const SqueezerSpec& a1, const SqueezerSpec& a2);

// V(X_b1 - X_b0) + V(Y_b1 + Y_b0) for the canonical (Y, X) squeezed inputs;
// equals 4[cosh r - 2 sqrt(mu(1-mu)) sinh r].
double duan_bs1(double mu, double r);

// Reference closed forms at mu = 2/3, nu = 1/2 for cross-validation:
//   vlf       = 5 exp(-r)
//   epr_one   = 36 / (5 + 4 cosh 2r)
//   epr_two   =  9 / (5 + 4 cosh 2r)
//   duan_bs1  = 4 cosh r - (8 sqrt(2)/3) sinh r
struct ClosedFormSuite {
  double vlf;
  double epr_one;
  double epr_two;
  double duan_bs1;
};

ClosedFormSuite closed_form_suite(double r);

// Frequency-resolved input variances for one mode, aligned with a grid.
struct ModeSpectrum {
  std::vector<double> sx, sy;
};

struct SpectralMomentTable {
  std::vector<double> omega;
  std::vector<MomentTable> tables;
};

// Per-frequency propagation: each omega point is treated independently
// (stationary spectra, no cross-frequency correlations).
SpectralMomentTable propagate_spectral(const std::array<ModeSpectrum, 3>& inputs,
                                 const AokiNetwork& net,
                                 const std::vector<double>& omega);

// OPO outputs arranged as network inputs: by default input 1 keeps the OPO
// orientation (squeezed in Y) and inputs 2, 3 have the axes swapped so X is
// squeezed. The axes argument overrides that assignment.
std::array<ModeSpectrum, 3> opo_input_spectra(
    const OpoParams& p, PumpBranch branch, const std::vector<double>& omega,
    const std::array<Axis, 3>& squeezed_axis = {Axis::Y, Axis::X, Axis::X});

}  // namespace tripsim
