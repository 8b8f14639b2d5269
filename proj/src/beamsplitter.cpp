#include "tripsim/beamsplitter.hpp"

#include <cmath>
#include <stdexcept>

namespace tripsim {

Eigen::Matrix3d aoki_matrix(double mu, double nu) {
  if (!(mu >= 0.0 && mu <= 1.0) || !(nu >= 0.0 && nu <= 1.0))
    throw std::invalid_argument("aoki_matrix: reflectivities must lie in [0, 1]");
  const double smu = std::sqrt(mu), cmu = std::sqrt(1.0 - mu);
  const double snu = std::sqrt(nu), cnu = std::sqrt(1.0 - nu);
  Eigen::Matrix3d m;
  m << cmu, smu, 0.0,
       smu * cnu, -cmu * cnu, snu,
       smu * snu, -cmu * snu, -cnu;
  return m;
}

AokiNetwork::AokiNetwork(double mu_, double nu_)
    : mu(mu_), nu(nu_), matrix(aoki_matrix(mu_, nu_)) {}

std::array<SqueezerSpec, 3> aoki_input_triple(double r) {
  return {SqueezerSpec{r, Axis::Y}, SqueezerSpec{r, Axis::X}, SqueezerSpec{r, Axis::X}};
}

MomentTable propagate_static(const std::array<SqueezerSpec, 3>& inputs,
                             const AokiNetwork& net) {
  const MomentTable in = MomentTable::from_specs({inputs[0], inputs[1], inputs[2]});
  return linear_transform(in, net.matrix);
}

MomentTable bs1_pair_table(double mu, const SqueezerSpec& a1, const SqueezerSpec& a2) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("bs1_pair_table: reflectivity must lie in [0, 1]");
  const double smu = std::sqrt(mu), cmu = std::sqrt(1.0 - mu);
  // Output ports of BS1: b1 as in the three-mode map, b0 its complement
  // (the nu -> 0 limit of the second row).
  Eigen::MatrixXd m(2, 2);
  m << cmu, smu,
       smu, -cmu;
  return linear_transform(MomentTable::from_specs({a1, a2}), m);
}

double duan_bs1(double mu, double r) {
  const MomentTable t =
      bs1_pair_table(mu, SqueezerSpec{r, Axis::Y}, SqueezerSpec{r, Axis::X});
  Eigen::VectorXd diff(2), sum(2);
  diff << 1.0, -1.0;
  sum << 1.0, 1.0;
  return t.combination_variance(Axis::X, diff) + t.combination_variance(Axis::Y, sum);
}

ClosedFormSuite closed_form_suite(double r) {
  if (r < 0.0) throw std::invalid_argument("closed_form_suite: r must be >= 0");
  const double denom = 5.0 + 4.0 * std::cosh(2.0 * r);
  return {5.0 * std::exp(-r), 36.0 / denom, 9.0 / denom,
          4.0 * std::cosh(r) - (8.0 * std::sqrt(2.0) / 3.0) * std::sinh(r)};
}

SpectralMomentTable propagate_spectral(const std::array<ModeSpectrum, 3>& inputs,
                                 const AokiNetwork& net,
                                 const std::vector<double>& omega) {
  const std::size_t n = omega.size();
  for (const auto& in : inputs) {
    if (in.sx.size() != n || in.sy.size() != n)
      throw std::invalid_argument("propagate_spectral: spectra and grid sizes differ");
  }
  SpectralMomentTable out;
  out.omega = omega;
  out.tables.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    const MomentTable in = MomentTable::from_variance_pairs(
        {{inputs[0].sx[w], inputs[0].sy[w]},
         {inputs[1].sx[w], inputs[1].sy[w]},
         {inputs[2].sx[w], inputs[2].sy[w]}});
    out.tables.push_back(linear_transform(in, net.matrix));
  }
  return out;
}

std::array<ModeSpectrum, 3> opo_input_spectra(
    const OpoParams& p, PumpBranch branch, const std::vector<double>& omega,
    const std::array<Axis, 3>& squeezed_axis) {
  std::array<ModeSpectrum, 3> out;
  for (auto& m : out) {
    m.sx.reserve(omega.size());
    m.sy.reserve(omega.size());
  }
  for (double w : omega) {
    const SpectrumPoint pt = opo_spectrum(p, w, branch);
    for (int i = 0; i < 3; ++i) {
      // The bare OPO output is squeezed in Y; a swap rotates the squeezing
      // onto the X axis.
      const bool swap = squeezed_axis[i] == Axis::X;
      out[i].sx.push_back(swap ? pt.s_y : pt.s_x);
      out[i].sy.push_back(swap ? pt.s_x : pt.s_y);
    }
  }
  return out;
}

}  // namespace tripsim
