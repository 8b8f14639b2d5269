#include "tripsim/intracavity.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tripsim/criteria.hpp"

namespace tripsim {

namespace {

void validate(const CavityParams& p) {
  if (!(p.gamma > 0.0) || !(p.kappa > 0.0) || !(p.chi > 0.0))
    throw std::invalid_argument("cavity: gamma, kappa, chi must be positive");
  if (!(p.epsilon >= 0.0))
    throw std::invalid_argument("cavity: epsilon must be nonnegative");
}

// Variable layout for the fluctuation system: alpha_i at 2i, alpha_i^+ at
// 2i+1 (signals, i = 0..2), beta_p at 6+2p, beta_p^+ at 7+2p (pumps).
// Pump p converts into the signal pair (pair_a[p], pair_b[p]).
constexpr int pair_a[3] = {0, 1, 0};
constexpr int pair_b[3] = {1, 2, 2};

Eigen::Matrix<double, 12, 12> drift_jacobian(const CavityParams& p, double beta_ss,
                                             double alpha_ss) {
  Eigen::Matrix<double, 12, 12> a = Eigen::Matrix<double, 12, 12>::Zero();
  for (int i = 0; i < 6; ++i) a(i, i) = -p.kappa;
  for (int i = 6; i < 12; ++i) a(i, i) = -p.gamma;
  const double gb = p.chi * beta_ss;
  const double ga = p.chi * alpha_ss;
  for (int pu = 0; pu < 3; ++pu) {
    const int j = pair_a[pu], k = pair_b[pu];
    // chi * beta_p * alpha_k^+ in d(alpha_j)/dt and partners.
    a(2 * j, 2 * k + 1) += gb;
    a(2 * k, 2 * j + 1) += gb;
    a(2 * j + 1, 2 * k) += gb;
    a(2 * k + 1, 2 * j) += gb;
    // chi * alpha_ss * delta(beta_p) feeding the signals.
    a(2 * j, 6 + 2 * pu) += ga;
    a(2 * k, 6 + 2 * pu) += ga;
    a(2 * j + 1, 7 + 2 * pu) += ga;
    a(2 * k + 1, 7 + 2 * pu) += ga;
    // -chi * alpha_j alpha_k depleting pump p.
    a(6 + 2 * pu, 2 * j) -= ga;
    a(6 + 2 * pu, 2 * k) -= ga;
    a(7 + 2 * pu, 2 * j + 1) -= ga;
    a(7 + 2 * pu, 2 * k + 1) -= ga;
  }
  return a;
}

Eigen::Matrix<double, 12, 12> diffusion_matrix(const CavityParams& p, double beta_ss) {
  Eigen::Matrix<double, 12, 12> d = Eigen::Matrix<double, 12, 12>::Zero();
  const double gb = p.chi * beta_ss;
  for (int pu = 0; pu < 3; ++pu) {
    const int j = pair_a[pu], k = pair_b[pu];
    d(2 * j, 2 * k) = d(2 * k, 2 * j) = gb;
    d(2 * j + 1, 2 * k + 1) = d(2 * k + 1, 2 * j + 1) = gb;
  }
  return d;
}

}  // namespace

double cavity_threshold(const CavityParams& p) {
  validate(p);
  return p.gamma * p.kappa / (2.0 * p.chi);
}

bool cavity_near_threshold(const CavityParams& p) {
  return std::abs(p.epsilon / cavity_threshold(p) - 1.0) < 0.02;
}

SteadyState steady_state(const CavityParams& p) {
  const double th = cavity_threshold(p);
  if (p.epsilon < th) return {p.epsilon / p.gamma, 0.0, CavityBranch::below};
  return {p.kappa / (2.0 * p.chi), std::sqrt((p.epsilon - th) / p.chi),
          CavityBranch::above};
}

double zero_freq_closed_form(const CavityParams& p, CavityBranch branch) {
  validate(p);
  const double kg = p.kappa * p.gamma;
  const double ce = p.chi * p.epsilon;
  if (branch == CavityBranch::below) {
    const double num =
        8.0 * kg * ce * (4.0 * kg * kg + 10.0 * kg * ce + 7.0 * ce * ce);
    const double den = (kg + ce) * (kg + ce) * (kg + 2.0 * ce) * (kg + 2.0 * ce);
    return 5.0 - num / den;
  }
  const double num = kg * kg * (3.0 * kg * kg + 6.0 * kg * ce + 19.0 * ce * ce);
  const double den = 4.0 * ce * ce * (kg + ce) * (kg + ce);
  return 5.0 - num / den;
}

double zero_freq_closed_form(const CavityParams& p) {
  return zero_freq_closed_form(p, p.epsilon < cavity_threshold(p)
                                      ? CavityBranch::below
                                      : CavityBranch::above);
}

MomentTable cavity_spectrum_table(const CavityParams& p, double omega, int alpha_sign) {
  validate(p);
  if (alpha_sign != 1 && alpha_sign != -1)
    throw std::invalid_argument("cavity_spectrum_table: alpha_sign must be +1 or -1");
  const SteadyState ss = steady_state(p);
  const double alpha = alpha_sign * ss.alpha_ss;

  const Eigen::Matrix<double, 12, 12> a = drift_jacobian(p, ss.beta_ss, alpha);
  const Eigen::Matrix<double, 12, 12> d = diffusion_matrix(p, ss.beta_ss);

  using Mat = Eigen::Matrix<std::complex<double>, 12, 12>;
  const std::complex<double> iw(0.0, omega);
  Mat m_plus = a.cast<std::complex<double>>();
  Mat m_minus = a.cast<std::complex<double>>();
  for (int i = 0; i < 12; ++i) {
    m_plus(i, i) += iw;
    m_minus(i, i) -= iw;
  }

  const auto check_regular = [](const Eigen::FullPivLU<Mat>& lu) {
    const auto piv = lu.matrixLU().diagonal();
    double lo = std::abs(piv(0)), hi = std::abs(piv(0));
    for (int i = 1; i < 12; ++i) {
      lo = std::min(lo, std::abs(piv(i)));
      hi = std::max(hi, std::abs(piv(i)));
    }
    if (!(lo > 1e-13 * hi))
      throw std::domain_error(
          "cavity_spectrum_table: drift matrix singular (at the oscillation threshold)");
  };

  // Stationary spectrum S = (A + i w)^-1 D (A^T - i w)^-1 of the linear
  // Ito system; the second factor is applied through the transpose solve.
  Eigen::FullPivLU<Mat> lu_plus(m_plus);
  check_regular(lu_plus);
  const Mat x = lu_plus.solve(d.cast<std::complex<double>>());
  Eigen::FullPivLU<Mat> lu_minus(m_minus);
  check_regular(lu_minus);
  Mat s = lu_minus.solve(x.transpose()).transpose();
  s = 0.5 * (s + s.transpose()).eval();

  const double oc = 2.0 * p.kappa;  // output coupling of the signal modes
  Eigen::Matrix3d vxx, vyy, vxy;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const std::complex<double> sxx = s(2 * i, 2 * j) + s(2 * i, 2 * j + 1) +
                                       s(2 * i + 1, 2 * j) + s(2 * i + 1, 2 * j + 1);
      const std::complex<double> syy = -s(2 * i, 2 * j) + s(2 * i, 2 * j + 1) +
                                       s(2 * i + 1, 2 * j) - s(2 * i + 1, 2 * j + 1);
      const std::complex<double> sxy =
          std::complex<double>(0.0, 1.0) *
          (-s(2 * i, 2 * j) + s(2 * i, 2 * j + 1) - s(2 * i + 1, 2 * j) +
           s(2 * i + 1, 2 * j + 1));
      vxx(i, j) = (i == j ? 1.0 : 0.0) + oc * sxx.real();
      vyy(i, j) = (i == j ? 1.0 : 0.0) + oc * syy.real();
      vxy(i, j) = oc * sxy.real();
    }
  }
  return MomentTable(vxx, vyy, vxy);
}

EprSpectraPoint cavity_epr_spectra(const CavityParams& p, double omega) {
  const MomentTable t = cavity_spectrum_table(p, omega);
  return {epr_one_mode(t, 1, 2, 0, Sign::plus).product,
          epr_two_mode(t, 0, 1, 2, Sign::plus).product};
}

}  // namespace tripsim
